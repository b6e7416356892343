"""Cooling-code data model, constructions and persistence."""
