"""
Python plugins that provide fixtures for indpoly tests.
"""

pytest_plugins = [
    'pytest_indpoly.plugins.base',
    'pytest_indpoly.plugins.families',
    'pytest_indpoly.plugins.log_capture',
]
