"""Domination mappings and the bipartite matching that synthesizes them."""
