"""
Test suite for Residue Localizer
"""
