"""
Independence polynomials of rooted trees: exact engines, the tree families
P_m, S_{2,t}, T_{m,t}, TG_{m,t}, and breaks of log-concavity.
"""
