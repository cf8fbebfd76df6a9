"""
Python module pytest_indpoly provides pytest fixtures for indpoly tests:
random trees, small family members and captured tskv logs.
"""
