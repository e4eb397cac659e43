"""
Builtin boxes - PR, anti-PR, the mixed-order device and local boxes
"""
from itertools import product
from typing import List
import numpy as np
from src.config.constants import (
    INPUT_PAIRS,
    PROVENANCE_PR,
    PROVENANCE_ANTI_PR,
    PROVENANCE_MIXED_ORDER
)
from src.domain.entities.box import Box


def pr_tables(shift: int = 0, alice_flip: int = 0, bob_flip: int = 0) -> np.ndarray:
    """
    PR-type tables P(ab|xy) = 1/2 iff a xor b = xy xor shift xor (alice_flip x) xor (bob_flip y)

    shift=1 gives the anti-PR tables.
    """
    tables = np.zeros((2, 2, 2, 2))
    for x, y in INPUT_PAIRS:
        parity = (x * y) ^ shift ^ (alice_flip * x) ^ (bob_flip * y)
        for a in (0, 1):
            tables[x, y, a, a ^ parity] = 0.5
    return tables


def deterministic_tables(a0: int, a1: int, b0: int, b1: int) -> np.ndarray:
    """Local deterministic tables: Alice answers a_x, Bob answers b_y"""
    alice = (a0, a1)
    bob = (b0, b1)
    tables = np.zeros((2, 2, 2, 2))
    for x, y in INPUT_PAIRS:
        tables[x, y, alice[x], bob[y]] = 1.0
    return tables


def pr_box() -> Box:
    """PR box in both orders"""
    return Box.symmetric(pr_tables(), provenance=PROVENANCE_PR)


def anti_pr_box() -> Box:
    """Anti-PR box in both orders"""
    return Box.symmetric(pr_tables(shift=1), provenance=PROVENANCE_ANTI_PR)


def mixed_order_device() -> Box:
    """PR correlations for Alice-first, anti-PR correlations for Bob-first"""
    return Box.from_arrays(pr_tables(), pr_tables(shift=1), provenance=PROVENANCE_MIXED_ORDER)


def local_deterministic_box(a0: int, a1: int, b0: int, b1: int) -> Box:
    """Deterministic local strategy, identical in both orders"""
    return Box.symmetric(
        deterministic_tables(a0, a1, b0, b1),
        provenance=f"builtin:local:{a0}{a1}{b0}{b1}"
    )


def no_signaling_vertices() -> List[np.ndarray]:
    """The 16 local deterministic and 8 PR-type vertex tables"""
    local = [deterministic_tables(*bits) for bits in product((0, 1), repeat=4)]
    nonlocal_ = [pr_tables(*bits) for bits in product((0, 1), repeat=3)]
    return local + nonlocal_


def random_no_signaling_box(rng: np.random.Generator) -> Box:
    """Random convex mixture of no-signaling vertices, same tables in both orders"""
    vertices = no_signaling_vertices()
    weights = rng.dirichlet(np.ones(len(vertices)))
    tables = np.tensordot(weights, np.stack(vertices), axes=1)
    # renormalize each table against accumulated rounding
    tables = tables / tables.sum(axis=(2, 3), keepdims=True)
    return Box.symmetric(tables, provenance="random:no-signaling-mixture")
