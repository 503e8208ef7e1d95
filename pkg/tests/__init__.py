"""Tests for shear_stability"""
