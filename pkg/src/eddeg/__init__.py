"""
eddeg - Euclidean distance degrees of flag, Grassmann, Stiefel and
Schubert matrix models.

Closed-form enumeration of the stationary points of X -> 1/2 ||X - A||^2
on each model, nearest-point computation, a descent-based oracle that
rediscovers the stationary set independently, and the ``eddeg`` CLI that
certifies the degree formulas numerically.

Usage:
    from eddeg.models import GrassmannSpec, ed_degree
    from eddeg.stationary import enumerate_stationary, nearest_point

    model = GrassmannSpec(n=5, k=2)
    points = enumerate_stationary(model, A)
    assert len(points) == ed_degree(model)
"""

__version__ = "0.1.0"

__all__ = ["__version__"]
