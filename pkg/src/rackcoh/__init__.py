"""Second rack cohomology of finite indecomposable quandles."""

__version__ = "0.1.0"
