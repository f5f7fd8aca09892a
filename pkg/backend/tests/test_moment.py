import sys
from pathlib import Path

import numpy as np
import pytest

ROOT = Path(__file__).resolve().parents[2]
if str(ROOT) not in sys.path:
    sys.path.insert(0, str(ROOT))

from backend.bergman.domains import sample_points  # noqa: E402
from backend.bergman.group_actions import create_action  # noqa: E402
from backend.bergman.models import (  # noqa: E402
    BasisError,
    BetaBasis,
    FiberWitness,
    Partition,
    PartitionError,
    SymbolSpec,
    WitnessNotFound,
)
from backend.bergman.moment import (  # noqa: E402
    basis_change_matrix,
    coordinate_functions,
    eval_symbol,
    fiber_witness,
    moment_masg,
    moment_subgroup,
    partition_beta_elliptic,
    partition_beta_parabolic,
    partition_beta_quasinilpotent,
    project_orthogonal,
    project_span,
)
from backend.bergman.profiles import ReciprocalProfile, create_profile  # noqa: E402


def test_elliptic_moment_known_value():
    g = create_action("elliptic", 2)
    assert np.allclose(moment_masg(g, np.array([0.5, 0.0])), [-1 / 3, 0.0])


def test_nilpotent_moment_known_value():
    g = create_action("nilpotent", 2)
    assert np.allclose(moment_masg(g, np.array([0.5j, 2j])), [4 / 7, -2 / 7])


def test_coordinate_functions_known_values():
    e2 = create_action("elliptic", 2)
    beta = BetaBasis.from_rows([[1.0, 1.0]])
    assert coordinate_functions(e2, beta, np.array([0.5, 0.0])) == pytest.approx([1 / 3])
    p2 = create_action("parabolic", 2)
    beta = BetaBasis.from_rows([[0.0, 1.0]])
    assert coordinate_functions(p2, beta, np.array([0.0, 1j])) == pytest.approx([0.5])


def test_symbol_for_unit_radial_beta_is_one_minus_squared_norm():
    g = create_action("elliptic", 2)
    s = SymbolSpec(g, BetaBasis.from_rows([[1.0, 1.0]]), ReciprocalProfile())
    z = np.array([0.5, 0.2j])
    assert eval_symbol(s, z) == pytest.approx(1 - 0.25 - 0.04)


def test_subgroup_moment_is_projection_onto_span():
    g = create_action("parabolic", 3)
    beta = BetaBasis.from_rows([[1.0, 0.0, 0.0], [0.0, 0.0, 1.0]])
    z = np.array([0.4, 0.2j, 0.3 + 1.2j])
    mu = moment_masg(g, z)
    mu_h = moment_subgroup(g, beta, z)
    assert np.allclose(mu_h, [mu[0], 0.0, mu[2]])


def test_projections_nest():
    rng = np.random.default_rng(0)
    g = create_action("nilpotent", 3)
    mu = g.moment_coords(sample_points(g.domain_kind, 3, 100, rng))
    inner = BetaBasis.from_rows([[1.0, 0.0, 0.0]])
    outer = BetaBasis.from_rows([[1.0, 0.0, 0.0], [0.0, 0.0, 1.0]])
    nested = project_orthogonal(inner, project_orthogonal(outer, mu))
    assert np.max(np.abs(project_orthogonal(inner, mu) - nested)) < 1e-12


def test_project_orthogonal_needs_orthogonal_beta():
    skew = BetaBasis.from_rows([[1.0, 0.0], [1.0, 1.0]])
    with pytest.raises(BasisError):
        project_orthogonal(skew, np.array([1.0, 2.0]))
    # the span is all of R^2, so the general projection is the identity
    assert np.allclose(project_span(skew, np.array([1.0, 2.0])), [1.0, 2.0])


def test_span_projection_agrees_for_orthogonal_beta():
    beta = BetaBasis.from_rows([[1.0, 1.0, 0.0], [0.0, 0.0, 2.0]])
    s = np.array([0.3, -1.2, 0.7])
    assert np.allclose(project_span(beta, s), project_orthogonal(beta, s))


def test_basis_change_matrix():
    beta = BetaBasis.from_rows([[1.0, 1.0, 0.0], [0.0, 0.0, 1.0]])
    other = BetaBasis.from_rows([[1.0, 1.0, 1.0], [0.0, 0.0, 2.0]])
    C = basis_change_matrix(beta, other)
    assert np.allclose(C @ other.matrix, beta.matrix)
    with pytest.raises(BasisError):
        basis_change_matrix(beta, BetaBasis.from_rows([[1.0, 0.0, 0.0], [0.0, 1.0, 0.0]]))


def test_partition_bases():
    assert np.allclose(partition_beta_elliptic(Partition((1, 2))).matrix, [[1, 0, 0], [0, 1, 1]])
    assert np.allclose(partition_beta_parabolic(Partition((2, 1))).matrix, [[1, 1, 0], [0, 0, 1]])
    assert np.allclose(
        partition_beta_quasinilpotent(Partition((1,)), 3).matrix,
        np.eye(3),
    )
    assert np.allclose(
        partition_beta_quasinilpotent(Partition((2,)), 5).matrix,
        [[1, 1, 0, 0, 0], [0, 0, 1, 0, 0], [0, 0, 0, 1, 0], [0, 0, 0, 0, 1]],
    )


def test_partition_bases_reject_bad_partitions():
    with pytest.raises(PartitionError):
        partition_beta_parabolic(Partition((2,)))
    with pytest.raises(PartitionError):
        partition_beta_parabolic(Partition((1, 2)))
    with pytest.raises(PartitionError):
        partition_beta_quasinilpotent(Partition((2,)), 3)


def test_dimension_mismatch_is_rejected():
    with pytest.raises(BasisError):
        coordinate_functions(create_action("elliptic", 2), BetaBasis.canonical(3), np.zeros(2))


def test_fiber_witness_elliptic():
    g = create_action("elliptic", 2)
    beta = BetaBasis.from_rows([[1.0, 0.0]])
    witness = fiber_witness(g, beta, lambda z: abs(z.coords[1]), trials=200, seed=0)
    assert isinstance(witness, FiberWitness)
    assert witness.moment_gap < 1e-10
    assert witness.discriminator_gap > 0.1
    mu_z = moment_subgroup(g, beta, witness.z)
    mu_w = moment_subgroup(g, beta, witness.w)
    assert np.allclose(mu_z, mu_w, atol=1e-10)


def test_fiber_witness_parabolic_partial_beta():
    g = create_action("parabolic", 3)
    beta = BetaBasis.from_rows([[1.0, 0.0, 0.0], [0.0, 0.0, 1.0]])
    witness = fiber_witness(g, beta, lambda z: abs(z.coords[1]) ** 2 / z.rho, trials=200, seed=1)
    assert isinstance(witness, FiberWitness)
    assert witness.discriminator_gap > 0.1


def test_fiber_witness_full_beta_finds_nothing():
    g = create_action("elliptic", 2)
    result = fiber_witness(g, BetaBasis.canonical(2), lambda z: abs(z.coords[1]), trials=5)
    assert isinstance(result, WitnessNotFound)
    assert not result


SUBGROUPS = [
    ("elliptic", 2, None, [[1.0, 1.0]]),
    ("parabolic", 3, None, [[1.0, 1.0, 0.0], [0.0, 0.0, 1.0]]),
    ("hyperbolic", 2, None, [[0.0, 1.0]]),
    ("nilpotent", 2, None, [[1.0, 0.0]]),
    ("quasinilpotent", 4, 1, [[1.0, 0.0, 0.0, 0.0], [0.0, 0.0, 0.0, 1.0]]),
]


@pytest.mark.parametrize("kind, n, k, rows", SUBGROUPS)
def test_subgroup_moment_and_symbol_are_invariant_under_h(kind, n, k, rows):
    rng = np.random.default_rng(7)
    g = create_action(kind, n, k)
    beta = BetaBasis.from_rows(rows)
    s = SymbolSpec(g, beta, create_profile("sigmoid", params=[0.4, 3.0]))
    for z in sample_points(g.domain_kind, n, 20, rng):
        X = rng.uniform(-2.0, 2.0, size=beta.m) @ beta.matrix
        moved = g.act_coords(X, z)
        assert np.allclose(moment_subgroup(g, beta, moved), moment_subgroup(g, beta, z), atol=1e-10)
        assert eval_symbol(s, moved) == pytest.approx(eval_symbol(s, z), abs=1e-10)


@pytest.mark.parametrize(
    "kind, n, rows",
    [
        ("elliptic", 2, [[1.0, 0.0]]),
        ("parabolic", 3, [[1.0, 0.0, 0.0], [0.0, 0.0, 1.0]]),
    ],
)
def test_fiber_witness_never_separates_a_symbol_of_the_same_beta(kind, n, rows):
    g = create_action(kind, n)
    beta = BetaBasis.from_rows(rows)
    s = SymbolSpec(g, beta, create_profile("gaussian"))
    result = fiber_witness(g, beta, lambda z: eval_symbol(s, z), trials=100, seed=3)
    assert isinstance(result, WitnessNotFound)
    assert result.best_gap < 1e-8


def test_symbol_does_not_depend_on_the_choice_of_basis():
    rng = np.random.default_rng(11)
    g = create_action("parabolic", 3)
    beta = BetaBasis.from_rows([[1.0, 1.0, 0.0], [0.0, 0.0, 1.0]])
    other = BetaBasis.from_rows([[1.0, 1.0, 1.0], [2.0, 2.0, -1.0]])
    C = basis_change_matrix(beta, other)
    weights = np.array([0.7, -0.4])
    # <weights, A(β)a> = <C^T weights, A(β')a>
    s = SymbolSpec(g, beta, create_profile("gaussian", weights=weights))
    s_other = SymbolSpec(g, other, create_profile("gaussian", weights=C.T @ weights))
    for z in sample_points(g.domain_kind, 3, 25, rng):
        assert eval_symbol(s_other, z) == pytest.approx(eval_symbol(s, z), abs=1e-12)


def test_parabolic_partition_in_one_dimension():
    beta = partition_beta_parabolic(Partition((1,)))
    assert np.allclose(beta.matrix, [[1.0]])
    g = create_action("parabolic", 1)
    z = np.array([0.3 + 2j])
    assert coordinate_functions(g, beta, z) == pytest.approx([0.25])
    assert coordinate_functions(g, beta, g.act_coords(np.array([5.0]), z)) == pytest.approx([0.25])
