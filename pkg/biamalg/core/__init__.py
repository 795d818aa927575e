"""
Finite commutative ring engine: rings, ideals, homomorphisms, invariants,
bi-amalgamations, spectra and the property oracles
"""
