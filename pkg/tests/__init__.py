"""Tests for polyhedral-tangent-planes"""
