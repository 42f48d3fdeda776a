"""Twisted cocycles over Rauzy-Veech renormalization of interval exchanges."""

from ._core import (
    Permutation,
    certify,
    chi_plus_direct,
    frames,
    genus_kappa,
    loop_b,
    loop_twisted_at,
    mahler_bivariate,
    mahler_univariate,
    omega_pi,
    omega_twisted,
    parse_substitution,
    rauzy_class,
    sections,
    self_similar_fixed_point,
    sigma,
    solve_eta,
    spectral_matrix,
    spectrum,
    verify_block_form,
    verify_fixture,
    verify_step_identities,
)

__all__ = [
    "Permutation",
    "certify",
    "chi_plus_direct",
    "frames",
    "genus_kappa",
    "loop_b",
    "loop_twisted_at",
    "mahler_bivariate",
    "mahler_univariate",
    "omega_pi",
    "omega_twisted",
    "parse_substitution",
    "rauzy_class",
    "sections",
    "self_similar_fixed_point",
    "sigma",
    "solve_eta",
    "spectral_matrix",
    "spectrum",
    "verify_block_form",
    "verify_fixture",
    "verify_step_identities",
]
