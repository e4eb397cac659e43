"""Value objects"""
