"""hyplab: hyperbolic metrics, length functionals and an inequality laboratory."""
__version__ = "0.1.0"
