"""Tests for the FEM-vs-collocation validation"""
