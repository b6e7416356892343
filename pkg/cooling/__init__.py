"""Spread-based cooling codes and the LPC codes built from them."""
