"""Shipped example theories, exchange-cell tables, and probe models."""

from pathlib import Path

from .builders import (  # noqa: F401
    braided_scalar_model,
    delooping_model,
    discrete_group_model,
    gl2_self_action_model,
    graded_lines,
    graded_lines_mutant,
    graded_lines_z3,
    monoid_theory,
    pointed_poset_model,
    poset_chain,
    poset_involution_model,
    poset_join_model,
    poset_meet_model,
    scalar_involution_model,
    sigma_braid,
    sigma_comm_flat,
    sigma_gl,
    sigma_inv,
    sigma_pointed_flat,
    t_ass,
    t_ass_flat,
    t_braid,
    t_comm,
    t_comm_flat,
    t_gl2,
    t_inv,
    t_inv_1d,
    t_pointed,
    t_pointed_flat,
    t_semiring,
    two_object_involution_model,
)


def law_path(name: str) -> Path:
    """Filesystem path of a shipped .law fixture file."""
    path = Path(__file__).parent / "law" / name
    if not path.exists():
        raise FileNotFoundError(f"no shipped fixture named {name}")
    return path


def law_files() -> list[Path]:
    return sorted((Path(__file__).parent / "law").glob("*.law"))
