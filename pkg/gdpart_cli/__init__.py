"""
gdpart command-line interface.
"""
