"""quadtwist: which torsion subgroups of elliptic curves arise over Q(sqrt(d))?

Reproduces a filter/search/sieve pipeline over quadratic twists of five
elliptic and three genus-2 modular curves, and computes the Granville growth
constant kappa'_f for twist families of hyperelliptic curves.
"""

__version__ = "0.1.0"
