pytest_plugins = ['pytest_indpoly.plugins']
