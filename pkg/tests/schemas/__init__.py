"""Schema tests"""
