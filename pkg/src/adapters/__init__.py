"""Adapters layer - file formats"""
