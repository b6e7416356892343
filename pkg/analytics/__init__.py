"""Bus-transmission simulation and tabular reports."""
