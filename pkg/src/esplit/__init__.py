"""Exact computations for e-split Levi subcosets of Z_ell-reflection cosets.

Subpackages: ``arith`` (exact arithmetic), ``refl`` (reflection cosets),
``levi`` (Phi-tori and the Levi poset), ``cat`` (categories, complexes,
homology, Bux's criterion), ``chars`` (character degrees), ``dade``
(cuspidal pairs and the Dade-like identity) and ``cli``.
"""
__version__ = "0.1.0"
