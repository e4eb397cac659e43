"""Numerical engines: perturbation search and rule solver"""
