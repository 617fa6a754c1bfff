"""Integer factorization toolkit: Fermat variants, lattice small roots, trivariate pipeline."""

__version__ = "0.1.0"
