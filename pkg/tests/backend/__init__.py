"""Backend tests"""
