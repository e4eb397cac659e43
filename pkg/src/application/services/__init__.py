"""Measurement, causality, uniqueness and experiment services"""
