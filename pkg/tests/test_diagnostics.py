"""Decision procedures and their witnesses.

Every frozen verdict here was cross-derived by the independent affine
solvers in tests/oracles.py before being inlined.  The re-check helpers
validate witnesses by direct matrix arithmetic only, never by re-running
the decision procedure that produced them.
"""

import pytest

from bimodcheck.bimodule import (
    evaluation_data, regular_bimodule, restrict_left, restrict_right,
    sub_bimodule, tensor_over,
)
from bimodcheck.diagnostics import (
    hdim_upto, is_formally_smooth_bimodule, is_formally_smooth_extension,
    is_rel_projective, is_separable_bimodule, is_separable_extension,
    morita_check, smooth_product, static_criteria, sugano_check,
)
from bimodcheck.errors import PreconditionError
from bimodcheck.exactlin import Field, Matrix, QQ, kernel_basis
from bimodcheck.fixtures import (
    algebra_matrix2, corpus, fixture, ground_map,
)
from bimodcheck.structures import identity_map, multiplication_map


def assert_casimir(t_space, target_mat, unit, element):
    """Centrality plus evaluation to the unit, by substitution."""
    elt = list(element)
    for i in range(t_space.left_algebra.dim):
        delta = t_space.left_action[i] - t_space.right_action[i]
        assert not any(delta.apply(elt))
    assert target_mat.apply(elt) == list(unit)


def assert_section(counit, section):
    """The section is a two-sided map splitting its counit."""
    assert section.validate().ok
    ident = Matrix.identity(section.matrix.field, section.source.dim)
    assert counit.matrix @ section.matrix == ident


# ---------------------------------------------------------------------------
# Separability


def test_separability_verdicts():
    assert is_separable_bimodule(fixture("fx2").bimodule).verdict
    assert is_separable_bimodule(fixture("fx5").bimodule).verdict
    assert is_separable_bimodule(fixture("fx6").bimodule).verdict
    assert not is_separable_bimodule(fixture("fx3").bimodule).verdict
    assert not is_separable_bimodule(fixture("fx4").bimodule).verdict
    assert not is_separable_bimodule(fixture("simple-over-dual").bimodule).verdict


def test_casimir_witness_revalidates():
    for name in ("fx2", "fx5", "fx6"):
        m = fixture(name).bimodule
        res = is_separable_bimodule(m)
        ev = evaluation_data(m)
        assert_casimir(ev.tensor.space, ev.map.matrix,
                       m.left_algebra.unit, res.casimir)


def test_separability_failure_carries_obstruction():
    m = fixture("fx3").bimodule
    res = is_separable_bimodule(m)
    assert res.casimir is None
    assert res.obstruction is not None
    assert res.dimensions["tensor_square"] == 4
    assert not res


def test_separability_mod_five_matches_rational_verdicts():
    f5 = Field(5)
    assert is_separable_bimodule(fixture("fx5", f5).bimodule).verdict
    assert not is_separable_bimodule(fixture("fx3", f5).bimodule).verdict


# ---------------------------------------------------------------------------
# Relative projectivity


def test_regular_bimodule_is_rel_projective_over_separable_module():
    m = fixture("fx2").bimodule
    p = regular_bimodule(m.left_algebra)
    res = is_rel_projective(p, m)
    assert res.verdict
    assert_section(res.counit, res.section)


def test_regular_bimodule_fails_over_dual_numbers():
    m = fixture("fx3").bimodule
    p = regular_bimodule(m.left_algebra)
    res = is_rel_projective(p, m)
    assert not res.verdict
    assert res.section is None
    assert res.obstruction is not None


def test_zero_module_is_rel_projective():
    m = fixture("fx3").bimodule
    ev = evaluation_data(m)
    zero_sub, _ = sub_bimodule(ev.tensor.space,
                               kernel_basis(Matrix.identity(QQ, 4)),
                               name="zero")
    res = is_rel_projective(zero_sub, m)
    assert res.verdict
    assert res.section.matrix.cols == 0


def test_rel_projectivity_requires_two_sided_object():
    m = fixture("fx3").bimodule
    with pytest.raises(PreconditionError):
        is_rel_projective(m, m)          # m is (B, k), not (B, B)


# ---------------------------------------------------------------------------
# Formal smoothness


SMOOTH_GRID = {
    "fx1": (True, "ev-injective"),
    "fx2": (True, "separable"),
    "fx3": (False, "kernel-splitting"),
    "fx4": (True, "kernel-splitting"),
    "fx5": (True, "ev-injective"),
    "fx6": (True, "separable"),
    "simple-over-dual": (True, "ev-injective"),
    "zero-over-dual": (True, "ev-injective"),
}


@pytest.mark.parametrize("name,expected", sorted(SMOOTH_GRID.items()))
def test_smoothness_verdicts_and_routes(name, expected):
    res = is_formally_smooth_bimodule(fixture(name).bimodule)
    assert (res.verdict, res.route) == expected


def test_smoothness_kernel_dimensions():
    assert is_formally_smooth_bimodule(fixture("fx3").bimodule).kernel_dim == 2
    res4 = is_formally_smooth_bimodule(fixture("fx4").bimodule)
    assert res4.kernel_dim == 6
    assert res4.dimensions == {"tensor_square": 9, "evaluation_rank": 3,
                               "kernel": 6}


def test_kernel_splitting_witness_revalidates():
    res = is_formally_smooth_bimodule(fixture("fx4").bimodule)
    assert res.verdict
    rp = res.detail
    assert_section(rp.counit, rp.section)


def test_smoothness_failure_carries_the_kernel_obstruction():
    res = is_formally_smooth_bimodule(fixture("fx3").bimodule)
    assert not res.verdict
    assert res.detail.obstruction is not None


# ---------------------------------------------------------------------------
# Extension-side separability and smoothness


def test_extension_separability_verdicts():
    assert is_separable_extension(fixture("fx2").base_map).verdict
    assert not is_separable_extension(fixture("fx3").base_map).verdict
    assert not is_separable_extension(fixture("fx4").base_map).verdict
    assert is_separable_extension(fixture("fx6").base_map).verdict


def test_extension_idempotent_revalidates():
    fx = fixture("fx6")
    b = fx.bimodule.left_algebra
    res = is_separable_extension(fx.base_map)
    mult = multiplication_map(b, fx.base_map)
    assert_casimir(mult.source, mult.matrix, b.unit, res.idempotent)


def test_column_split_idempotent_is_a_valid_witness():
    # e11 (x) e11 + e21 (x) e12 in matrix2 (x)_diagonal matrix2; the naive
    # diagonal split e11 (x) e11 + e22 (x) e22 is not central here because
    # tensor relations only move diagonal factors across
    fx = fixture("fx6")
    b = fx.bimodule.left_algebra
    reg = regular_bimodule(b)
    square = tensor_over(restrict_right(reg, fx.base_map),
                         restrict_left(reg, fx.base_map))
    plain = [QQ.zero] * 16
    plain[0 * 4 + 0] = QQ.one        # e11 (x) e11
    plain[2 * 4 + 1] = QQ.one        # e21 (x) e12
    element = square.project_vec(plain)
    mult = multiplication_map(b, fx.base_map)
    assert_casimir(square.space, mult.matrix, b.unit, element)

    naive = [QQ.zero] * 16
    naive[0 * 4 + 0] = QQ.one        # e11 (x) e11
    naive[3 * 4 + 3] = QQ.one        # e22 (x) e22
    bad = square.project_vec(naive)
    e12 = 1
    delta = square.space.left_action[e12] - square.space.right_action[e12]
    assert any(delta.apply(bad))


def test_extension_smoothness_verdicts_and_kernels():
    res2 = is_formally_smooth_extension(fixture("fx2").base_map)
    assert res2.verdict and res2.kernel_dim == 2
    assert_section(res2.counit, res2.section)

    res3 = is_formally_smooth_extension(fixture("fx3").base_map)
    assert not res3.verdict
    assert res3.kernel_dim == 2
    assert res3.obstruction is not None

    res4 = is_formally_smooth_extension(fixture("fx4").base_map)
    assert res4.verdict and res4.kernel_dim == 6
    assert res4.dimensions["expansion"] == 54
    assert_section(res4.counit, res4.section)


def test_identity_extension_is_smooth_with_zero_kernel():
    b = fixture("fx3").bimodule.left_algebra
    res = is_formally_smooth_extension(identity_map(b))
    assert res.verdict
    assert res.kernel_dim == 0
    assert res.counit is None
    assert res.section.matrix.cols == 0


# ---------------------------------------------------------------------------
# Homological dimension


def test_hdim_of_separable_fixtures_is_zero():
    for name in ("fx1", "fx2", "fx5", "fx6", "dual-self"):
        res = hdim_upto(fixture(name).bimodule, 2)
        assert res.value == 0, name
        assert not res.shift_inferred
        assert res.render() == "0"


def test_hdim_of_upper_triangular_is_one():
    res = hdim_upto(fixture("fx4").bimodule, 2)
    assert res.value == 1
    assert not res.shift_inferred
    assert res.bounded
    assert_section(res.witness.counit, res.witness.section)


def test_hdim_of_dual_numbers_exceeds_every_probed_level():
    res = hdim_upto(fixture("fx3").bimodule, 3)
    assert res.value is None
    assert not res.bounded
    assert res.render() == "> 3"
    assert res.shift_inferred
    assert res.witness is None


def test_hdim_render_at_level_zero():
    res = hdim_upto(fixture("fx3").bimodule, 0)
    assert res.render() == "> 0"
    assert not res.shift_inferred      # no syzygy shifting was attempted


def test_hdim_preconditions():
    with pytest.raises(PreconditionError):
        hdim_upto(fixture("simple-over-dual").bimodule, 1)
    with pytest.raises(PreconditionError):
        hdim_upto(fixture("fx3").bimodule, -1)


# ---------------------------------------------------------------------------
# Cross-theory reports


def test_morita_report_on_the_column_module():
    m = fixture("fx5").bimodule
    rep = morita_check(m, regular_bimodule(m.left_algebra), 2)
    assert rep.module_dims == (1, 0, 0)
    assert rep.ring_dims == (1, 0, 0)
    assert rep.dims_agree
    assert rep.ok


def test_morita_check_requires_a_progenerator():
    m = fixture("simple-over-dual").bimodule
    with pytest.raises(PreconditionError):
        morita_check(m, regular_bimodule(m.left_algebra), 1)


def test_sugano_report_on_separable_column_module():
    rep = sugano_check(fixture("fx5").bimodule)
    assert rep.separable_bimodule
    assert rep.generator
    assert rep.extension_separable
    assert rep.agree


def test_sugano_report_on_inseparable_free_module():
    rep = sugano_check(fixture("fx3").bimodule)
    assert not rep.separable_bimodule
    assert rep.generator
    assert not rep.extension_separable
    assert rep.agree


def test_sugano_requires_projectivity():
    with pytest.raises(PreconditionError):
        sugano_check(fixture("simple-over-dual").bimodule)


def test_static_criteria_on_the_column_module():
    rep = static_criteria(fixture("fx5").bimodule)
    assert rep.ev_endo_injective and rep.ev_endo_iso
    assert rep.generator and rep.endo_separable and rep.trace_static
    assert rep.injectivity_cluster and rep.generator_cluster


def test_static_criteria_on_the_simple_module():
    rep = static_criteria(fixture("simple-over-dual").bimodule)
    assert rep.ev_endo_injective
    assert rep.trace_static
    assert not rep.generator
    assert not rep.ev_endo_iso
    assert not rep.endo_separable
    assert rep.dimensions == {"tensor_over_endo": 1, "trace": 1}


def test_smooth_product_mode_one_with_separable_partner():
    m2 = algebra_matrix2(QQ)
    col = fixture("fx5").bimodule
    partner = restrict_left(regular_bimodule(m2), ground_map(QQ, m2))
    rep = smooth_product(col, partner, 1)
    assert rep.hypotheses_hold
    assert rep.smooth.verdict
    assert rep.product.dim == 8


def test_smooth_product_reports_failed_hypotheses_without_raising():
    fx = fixture("fx4")
    b = fx.bimodule.left_algebra
    partner = restrict_left(regular_bimodule(b), fx.base_map)
    rep = smooth_product(fx.bimodule, partner, 2)
    assert not rep.hypotheses["evaluation_injective"]
    assert not rep.hypotheses_hold
    assert rep.smooth.verdict            # smooth anyway; no violation to raise


def test_smooth_product_negative_outcome_with_failed_hypotheses():
    fx = fixture("fx3")
    partner = restrict_left(regular_bimodule(fx.bimodule.left_algebra),
                            fx.base_map)
    rep = smooth_product(fx.bimodule, partner, 1)
    assert not rep.hypotheses_hold
    assert not rep.smooth.verdict


def test_smooth_product_mode_validation():
    col = fixture("fx5").bimodule
    with pytest.raises(PreconditionError):
        smooth_product(col, col, 3)
    with pytest.raises(PreconditionError):
        smooth_product(col, col, 1)      # middle algebras differ


def test_separable_implies_formally_smooth_everywhere():
    for fx in corpus():
        sep = is_separable_bimodule(fx.bimodule)
        if sep.verdict:
            assert is_formally_smooth_bimodule(fx.bimodule).verdict, fx.name
