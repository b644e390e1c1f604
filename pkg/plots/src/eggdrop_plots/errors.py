"""Errors for the plots package."""


class SchemaError(Exception):
    """The input CSV does not match the comparison schema."""
