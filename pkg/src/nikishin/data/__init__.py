"""Shipped system definitions and the JSON schema."""
