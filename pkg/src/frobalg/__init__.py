"""Exact algebra for Frobenius traces on quantum tori and O_q(SL_2) at odd roots of unity."""

__version__ = "0.1.0"
