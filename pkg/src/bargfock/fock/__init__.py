"""
Fock-space functionals: weights, mixed norms, the reproducing kernel, the ball cover and narrow convergence.
"""

# Re-export the submodules for easy importing
from bargfock.fock import covering, kernel, narrow, norms, weights

__all__ = ['covering', 'kernel', 'narrow', 'norms', 'weights']
