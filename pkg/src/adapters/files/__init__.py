"""File adapters: box files, CSV and SVG output"""
