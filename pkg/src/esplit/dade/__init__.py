"""Cuspidal pairs, relative Weyl groups of chains and the Dade-like identity."""
from .dataset import CuspidalDataset, CuspidalRecord, DatasetError, DegreePoly, ingest_cuspidal_dataset
from .involution import InvolutionReport, cancellation_involution
from .pairs import (
    CuspidalPair,
    PairSystem,
    PrincipalModeError,
    RelativeWeylGroup,
    chain_stabilizer,
    cuspidal_pairs,
    dataset_pairs,
    principal_pairs,
    relative_weyl_group,
)
from .verify import KReport, KRow, chain_pair_classes, k_u, k_u_c, k_u_chain, star_orbits, verify_dade

__all__ = [
    "CuspidalDataset", "CuspidalRecord", "DatasetError", "DegreePoly", "ingest_cuspidal_dataset",
    "InvolutionReport", "cancellation_involution", "CuspidalPair", "PairSystem",
    "PrincipalModeError", "RelativeWeylGroup", "chain_stabilizer", "cuspidal_pairs",
    "dataset_pairs", "principal_pairs", "relative_weyl_group", "KReport", "KRow",
    "chain_pair_classes", "k_u", "k_u_c", "k_u_chain", "star_orbits", "verify_dade",
]
