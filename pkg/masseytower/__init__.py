# masseytower/__init__.py
"""Triple Massey products and p-class field towers of imaginary quadratic fields."""

__version__ = "0.1.0"
