"""mfcat: exact-arithmetic engine for homotopy categories of matrix
factorizations of a degree-one section on a projective scheme."""

__version__ = "0.1.0"
