"""Monte Carlo simulator of entanglement distribution strategies on a
linear repeater chain: link generation under photon loss, entanglement
swapping, purification, code-protected logical pairs, and the hybrid
purify-then-encode strategies, with fidelity and throughput estimation
over hardware parameter grids."""

__version__ = "0.1.0"
