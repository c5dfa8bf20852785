"""Bar resolutions, contracting homotopies, syzygies, and both relative
cohomology theories.

Expected dimensions are frozen: bar object sizes follow dim B * (hom
dims), and the cohomology values were derived from the independent
classical-complex oracle in tests/oracles.py before being inlined here.
"""

import pytest

from bimodcheck.bimodule import (
    centralizer, evaluation_data, regular_bimodule, restrict_left,
)
from bimodcheck.errors import DimensionCapError, PreconditionError
from bimodcheck.exactlin import Field, Matrix, QQ, kernel_basis
from bimodcheck.fixtures import fixture, ground_map
from bimodcheck.homology import (
    bar_resolution, comonad_apply, comparison_check, coefficient_transport,
    homotopy_check, module_hochschild, morita_data, ring_hochschild, syzygy,
)
from bimodcheck.structures import identity_map


# ---------------------------------------------------------------------------
# Comonad and bar complex


def test_comonad_expansion_of_the_regular_coefficients():
    m = fixture("fx3").bimodule
    b_reg = regular_bimodule(m.left_algebra)
    fn, counit = comonad_apply(m, b_reg)
    assert fn.dim == 4
    assert counit.validate().ok
    # the counit against the regular coefficients is evaluation
    assert counit.matrix == evaluation_data(m).map.matrix


def test_bar_object_dimensions():
    for name, dims in (("fx1", (1, 1, 1)), ("fx3", (4, 8, 16)),
                       ("fx5", (4, 4, 4)), ("fx6", (8, 16, 32))):
        chain = bar_resolution(fixture(name).bimodule, 3)
        assert tuple(p.dim for p in chain.objects) == dims, name


def test_bar_differentials_compose_to_zero():
    chain = bar_resolution(fixture("fx3").bimodule, 3)
    v = chain.validate()
    assert v.ok, v.message
    assert chain.differentials[0].matrix \
        == evaluation_data(fixture("fx3").bimodule).map.matrix


def test_bar_resolution_requires_a_generator():
    with pytest.raises(PreconditionError):
        bar_resolution(fixture("simple-over-dual").bimodule, 2)
    with pytest.raises(PreconditionError):
        bar_resolution(fixture("fx3").bimodule, 0)


def test_contracting_homotopy_certifies_exactness():
    for name in ("fx1", "fx2", "fx3", "fx5", "fx6", "dual-self"):
        v = homotopy_check(fixture(name).bimodule, 2)
        assert v.ok, f"{name}: {v.message}"


def test_homotopy_check_rejects_non_generators():
    with pytest.raises(PreconditionError):
        homotopy_check(fixture("zero-over-dual").bimodule, 1)


# ---------------------------------------------------------------------------
# Syzygies


def test_syzygy_zero_is_the_algebra_itself():
    m = fixture("fx3").bimodule
    s0 = syzygy(m, 0)
    assert s0 is regular_bimodule(m.left_algebra)


def test_first_syzygy_dimensions():
    assert syzygy(fixture("fx5").bimodule, 1).dim == 0
    assert syzygy(fixture("fx3").bimodule, 1).dim == 2
    assert syzygy(fixture("fx6").bimodule, 1).dim == 4


def test_second_syzygy_of_dual_numbers():
    # d_1: P_1 (dim 8) -> P_0 (dim 4) has rank 2 by exactness
    assert syzygy(fixture("fx3").bimodule, 2).dim == 6


def test_syzygy_is_the_kernel_of_the_differential():
    m = fixture("fx3").bimodule
    chain = bar_resolution(m, 2)
    ker = kernel_basis(chain.differentials[1].matrix)
    assert syzygy(m, 2).dim == ker.dim


# ---------------------------------------------------------------------------
# Module-relative cohomology


FROZEN_MODULE_DIMS = {
    "fx1": (1, 0, 0),
    "fx2": (2, 0, 0),
    "fx3": (2, 1, 1),
    "fx4": (1, 0, 0),
    "fx5": (1, 0, 0),
    "fx6": (1, 0, 0),
}


@pytest.mark.parametrize("name,dims", sorted(FROZEN_MODULE_DIMS.items()))
def test_module_cohomology_of_regular_coefficients(name, dims):
    m = fixture(name).bimodule
    h = module_hochschild(m, regular_bimodule(m.left_algebra), 2)
    assert h.dims() == dims


def test_degree_zero_is_the_centralizer():
    for name in ("fx1", "fx2", "fx3", "fx4", "fx5", "fx6"):
        m = fixture(name).bimodule
        b_reg = regular_bimodule(m.left_algebra)
        h = module_hochschild(m, b_reg, 0)
        assert h.dims()[0] == centralizer(b_reg).dim, name


def test_cohomology_bookkeeping_is_consistent():
    h = module_hochschild(fixture("fx3").bimodule,
                          regular_bimodule(fixture("fx3").bimodule.left_algebra),
                          2)
    for deg in h.degrees:
        assert deg.dim == deg.cocycle_dim - deg.coboundary_dim
        assert len(deg.representatives) == deg.dim
    assert h.degree(1).degree == 1


def test_module_cohomology_rejects_one_sided_coefficients():
    m = fixture("fx3").bimodule
    with pytest.raises(PreconditionError):
        module_hochschild(m, m, 1)       # coefficients are (B, k), not (B, B)


def test_module_cohomology_rejects_non_generators():
    m = fixture("simple-over-dual").bimodule
    with pytest.raises(PreconditionError):
        module_hochschild(m, regular_bimodule(m.left_algebra), 1)


def test_dimension_cap_names_the_offending_level():
    m = fixture("fx3", Field(5)).bimodule
    with pytest.raises(DimensionCapError) as exc:
        module_hochschild(m, regular_bimodule(m.left_algebra), 2, dim_cap=10)
    assert "bar object" in str(exc.value)
    assert exc.value.requested == 16
    assert exc.value.cap == 10


def test_cohomology_is_deterministic_across_rebuilds():
    # non-default fields bypass the fixture cache, giving independent builds
    runs = []
    for _ in range(2):
        m = fixture("fx3", Field(5)).bimodule
        h = module_hochschild(m, regular_bimodule(m.left_algebra), 2)
        runs.append((h.dims(),
                     tuple(tuple(str(c) for c in rep)
                           for deg in h.degrees for rep in deg.representatives)))
    assert runs[0] == runs[1]


def test_module_cohomology_mod_five():
    m = fixture("fx5", Field(5)).bimodule
    h = module_hochschild(m, regular_bimodule(m.left_algebra), 2)
    assert h.dims() == (1, 0, 0)


# ---------------------------------------------------------------------------
# Ring-relative cohomology


def test_identity_extension_reduces_to_the_centralizer():
    b = fixture("fx3").bimodule.left_algebra
    h = ring_hochschild(identity_map(b), regular_bimodule(b), 2)
    assert h.dims() == (2, 0, 0)


def test_ring_cohomology_over_the_ground_field_is_classical():
    fx = fixture("fx3")
    b = fx.bimodule.left_algebra
    h = ring_hochschild(fx.base_map, regular_bimodule(b), 2)
    assert h.dims() == (2, 1, 1)


def test_ring_cohomology_of_matrix_algebra_over_diagonal():
    fx = fixture("fx6")
    b = fx.bimodule.left_algebra
    h = ring_hochschild(fx.base_map, regular_bimodule(b), 2)
    assert h.dims() == (1, 0, 0)


def test_ring_cohomology_respects_the_cap():
    fx = fixture("fx3", Field(5))
    b = fx.bimodule.left_algebra
    with pytest.raises(DimensionCapError):
        ring_hochschild(fx.base_map, regular_bimodule(b), 2, dim_cap=6)


# ---------------------------------------------------------------------------
# The identification between the two theories


def test_progenerator_identification_dimensions():
    m = fixture("fx5").bimodule
    md = morita_data(m)
    assert md.endo.algebra.dim == 1
    assert md.theta_tensor.space.dim == md.endo.algebra.dim
    assert md.theta.validate().ok


def test_coefficient_transport_dimension():
    m = fixture("fx5").bimodule
    w = coefficient_transport(m, regular_bimodule(m.left_algebra)).w
    # *M (x)_B B (x)_B M collapses to *M (x)_B M, which is S
    assert w.dim == 1


def test_comparison_rewrite_is_a_degreewise_isomorphism():
    for name in ("fx5", "fx6", "dual-self"):
        m = fixture(name).bimodule
        rep = comparison_check(m, regular_bimodule(m.left_algebra), 2)
        assert rep.ok, name
        assert rep.base_square
        assert all(rep.step_squares)
        for deg in rep.degrees:
            assert deg.iso
            assert deg.module_cochain_dim == deg.ring_cochain_dim


def test_comparison_requires_a_progenerator():
    m = fixture("simple-over-dual").bimodule
    with pytest.raises(PreconditionError):
        comparison_check(m, regular_bimodule(m.left_algebra), 1)


def test_morita_data_rejects_non_progenerators():
    m = fixture("simple-over-dual").bimodule
    with pytest.raises(PreconditionError):
        morita_data(m)
