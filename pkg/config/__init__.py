"""Configuration loading for the cooling-bus toolkit."""
