"""Chart generation for simulation results."""
