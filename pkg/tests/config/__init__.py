"""Config tests"""
