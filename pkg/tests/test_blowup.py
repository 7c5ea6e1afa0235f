"""Blow-up charts: substitution bookkeeping, classification, and drivers."""

import pytest

from lctkit import (
    Auto,
    ChartError,
    ChartStatus,
    FactorizationDestroyedError,
    Scripted,
    UnitInputError,
    ZeroPolynomialError,
    apply_affine,
    blowup_origin,
    generator,
    make_root_chart,
    parse_poly,
    parse_script,
    resolve,
    scripted_resolution,
    total_transform_identity,
    translate,
    verify_jacobian,
)

P = parse_poly


def z_chart(chart):
    return blowup_origin(chart, ("x", "y", "z"))[2]


# -- root charts --------------------------------------------------------------


def test_root_chart_plain():
    root = make_root_chart(P("x^2 + y^2 + z^3"))
    assert root.strict == P("x^2 + y^2 + z^3")
    assert root.status is ChartStatus.OPEN
    assert not root.exceptional
    assert root.depth == 0


def test_root_chart_divides_out_coordinate_content():
    # x^2*y^2*(1 + x) carries coordinate divisors before any blow-up
    root = make_root_chart(P("x^2*y^2 + x^3*y^2"))
    assert root.strict == P("1 + x")
    assert dict(root.f_exponents) == {"x": 2, "y": 2}
    assert dict(root.jac_exponents) == {"x": 0, "y": 0}
    assert root.divisor_ids == {"x": "root/x", "y": "root/y"}
    assert root.status is ChartStatus.UNIT_STRICT


def test_root_chart_rejects_degenerate_input():
    with pytest.raises(ZeroPolynomialError):
        make_root_chart(P("0"))
    with pytest.raises(UnitInputError):
        make_root_chart(P("1 + x"))


# -- single blow-up of the origin ----------------------------------------------


@pytest.mark.parametrize("n", range(2, 9))
def test_a_family_depth_one_charts(n):
    f = generator("A", n)
    root = make_root_chart(f)
    ux, uy, uz = blowup_origin(root, ("x", "y", "z"))
    assert ux.strict == P(f"1 + y^2 + x^{n - 1}*z^{n + 1}")
    assert uy.strict == P(f"x^2 + 1 + y^{n - 1}*z^{n + 1}")
    assert uz.strict == P(f"x^2 + y^2 + z^{n - 1}")
    for child, v in ((ux, "x"), (uy, "y"), (uz, "z")):
        assert dict(child.f_exponents) == {v: 2}
        assert dict(child.jac_exponents) == {v: 2}
        assert child.divisor_ids == {v: "E@root"}
        assert child.exceptional == (v,)
        # pull back by hand: scaling the other two variables by v recovers
        # the total transform v^2 * strict
        others = {w: P(w) * P(v) for w in ("x", "y", "z") if w != v}
        assert f.substitute(others) == P(v) ** 2 * child.strict


# -- classification -----------------------------------------------------------


def test_classify_unit_and_smooth_and_open():
    root = make_root_chart(P("x^2 + y^2 + z^3"))
    ux, uy, uz = blowup_origin(root, ("x", "y", "z"))
    assert ux.status is ChartStatus.UNIT_STRICT
    assert uy.status is ChartStatus.UNIT_STRICT
    # gradient points along the exceptional direction z; still a smooth point
    assert uz.status is ChartStatus.SMOOTH_STRICT
    assert make_root_chart(P("x^2 + y^2")).status is ChartStatus.OPEN
    assert make_root_chart(P("z + x^2")).status is ChartStatus.SMOOTH_STRICT


# -- chains of origin blow-ups --------------------------------------------------


def test_chain_exponents_double_depth():
    # k-fold z-chart chain on x^2 + y^2 + z^21: total transform z^(2k),
    # Jacobian z^(2k)
    chart = make_root_chart(P("x^2 + y^2 + z^21"))
    for k in range(1, 11):
        chart = z_chart(chart)
        assert chart.f_exponents["z"] == 2 * k
        assert chart.jac_exponents["z"] == 2 * k
        assert chart.strict == P(f"x^2 + y^2 + z^{21 - 2 * k}")
        assert verify_jacobian(chart)
    assert chart.status is ChartStatus.SMOOTH_STRICT


def test_sibling_charts_share_divisor_id():
    root = make_root_chart(P("x^2 + y^2 + z^5"))
    children = blowup_origin(root, ("x", "y", "z"))
    ids = {c.divisor_ids[c.exceptional[0]] for c in children}
    assert ids == {"E@root"}
    deeper = blowup_origin(children[2], ("x", "y", "z"))
    assert {c.divisor_ids[c.exceptional[0]] for c in deeper} == {"E@U_z"}


def test_blowup_requires_open_chart():
    chart = z_chart(make_root_chart(P("x^2 + y^2 + z^3")))
    assert chart.status is ChartStatus.SMOOTH_STRICT
    with pytest.raises(ChartError):
        blowup_origin(chart, ("x", "y", "z"))


def test_two_variable_center():
    # blowing up the line x = y = 0 leaves z untouched and adds one to h only
    root = make_root_chart(P("x^2 + y^3"))
    ux, uy = blowup_origin(root, ("x", "y"))
    assert ux.strict == P("1 + x*y^3")
    assert uy.strict == P("x^2 + y")
    assert dict(ux.f_exponents) == {"x": 2}
    assert dict(ux.jac_exponents) == {"x": 1}
    assert dict(uy.f_exponents) == {"y": 2}
    assert dict(uy.jac_exponents) == {"y": 1}
    assert verify_jacobian(ux) and verify_jacobian(uy)


def test_center_validation():
    root = make_root_chart(P("x^2 + y^2 + z^3"))
    with pytest.raises(ChartError):
        blowup_origin(root, ("x",))
    with pytest.raises(ChartError):
        blowup_origin(root, ("x", "x"))
    with pytest.raises(ChartError):
        blowup_origin(root, ("x", "w"))


# -- affine substitutions -------------------------------------------------------


def test_linear_substitution_keeps_exact_inverse():
    # y := y + 2*x declares the NEW y; the old y is recovered as y - 2*x
    root = make_root_chart(P("x^2 + y^2 + z^3"))
    moved = apply_affine(root, "y", P("y + 2*x"))
    assert moved.strict == P("x^2 + (y - 2*x)^2 + z^3")
    assert moved.strict.substitute({"y": P("y + 2*x")}) == root.strict
    assert moved.map_from_root == {"x": P("x"), "y": P("y - 2*x"), "z": P("z")}
    assert verify_jacobian(moved)
    assert moved.steps[-1].exact_inverse


def test_triangular_substitution_straightens_d5():
    # the y-chart of x^2 + y^2*z + z^4 becomes x^2 + y*z after the coordinate
    # change z := z + y*z^4
    root = make_root_chart(generator("D", 5))
    uy = blowup_origin(root, ("x", "y", "z"))[1]
    assert uy.strict == P("x^2 + y*z + y^2*z^4")
    fixed = apply_affine(uy, "z", P("z + y*z^4"))
    assert fixed.strict == P("x^2 + y*z")
    assert dict(fixed.f_exponents) == dict(uy.f_exponents)
    assert verify_jacobian(fixed)


def test_substitution_must_stay_polynomial():
    root = make_root_chart(generator("D", 5))
    uz = blowup_origin(root, ("x", "y", "z"))[2]
    with pytest.raises(ChartError):
        apply_affine(uz, "z", P("z + y*z^4"))


def test_substitution_must_involve_the_variable():
    root = make_root_chart(P("x^2 + y^2 + z^3"))
    with pytest.raises(ChartError):
        apply_affine(root, "z", P("1"))
    with pytest.raises(ChartError):
        apply_affine(root, "z", P("x + y"))


def test_exceptional_shift_rejected():
    # z = 0 is the exceptional divisor; an affine change may not move it
    chart = z_chart(make_root_chart(P("x^2 + y^2 + z^3")))
    with pytest.raises(ChartError):
        apply_affine(chart, "z", P("z + 1"))
    moved = apply_affine(chart, "x", P("x + z"))
    assert verify_jacobian(moved)


# -- translations ---------------------------------------------------------------


def test_translate_plain_variable():
    root = make_root_chart(P("x^2 + y^2 + z^3"))
    moved = translate(root, "z", 1)
    assert moved.strict == P("x^2 + y^2 + (z + 1)^3")
    assert not moved.steps[-1].localized
    assert verify_jacobian(moved)


def test_translate_exceptional_localizes():
    chart = z_chart(make_root_chart(P("x^2 + y^2 + z^3")))
    moved = translate(chart, "z", 1)
    # the old divisor z^2 is a unit near the new origin and joins the strict part
    assert moved.steps[-1].localized
    assert "z" not in moved.f_exponents
    assert "z" not in moved.divisor_ids
    assert moved.strict == P("(z + 1)^2 * (x^2 + y^2 + z + 1)")
    assert verify_jacobian(moved)


def test_translate_exceptional_by_zero_rejected():
    chart = z_chart(make_root_chart(P("x^2 + y^2 + z^3")))
    with pytest.raises(ChartError):
        translate(chart, "z", 0)


# -- resolution drivers -----------------------------------------------------------


def test_auto_terminates_and_logs():
    tree = resolve(P("x^2 + y^2 + z^6"), Auto(max_depth=10))
    assert not tree.has_depth_limit()
    statuses = {node.chart.status for node in tree.nodes() if node.is_leaf}
    assert statuses <= {ChartStatus.UNIT_STRICT, ChartStatus.SMOOTH_STRICT}
    assert any("blowup" in line for line in tree.strategy_log)
    assert all(verify_jacobian(node.chart) for node in tree.nodes())
    assert all(total_transform_identity(tree, node.chart) for node in tree.nodes())


def test_auto_is_deterministic():
    first = resolve(P("x^2 + y^2*z + z^4"), Auto(max_depth=8))
    second = resolve(P("x^2 + y^2*z + z^4"), Auto(max_depth=8))
    a = [(n.chart.path_text(), n.chart.status, n.chart.strict) for n in first.nodes()]
    b = [(n.chart.path_text(), n.chart.status, n.chart.strict) for n in second.nodes()]
    assert a == b


def test_depth_limit_marks_leaves():
    tree = resolve(P("x^2 + y^2 + z^9"), Auto(max_depth=2))
    assert tree.has_depth_limit()
    limited = [n for n in tree.nodes() if n.chart.status is ChartStatus.DEPTH_LIMIT]
    assert limited and all(n.is_leaf for n in limited)


def test_scripted_follows_script_then_auto():
    script = parse_script("blowup x y z\nchart z")
    tree = resolve(P("x^2 + y^2 + z^9"), Scripted(script, max_depth=10))
    # the script stops after one chart; the driver finishes the rest
    assert not tree.has_depth_limit()
    assert all(verify_jacobian(node.chart) for node in tree.nodes())


def test_scripted_stop_leaves_depth_limit():
    tree = resolve(P("x^2 + y^2 + z^3"), Scripted(parse_script("stop"), max_depth=10))
    assert tree.has_depth_limit()
    assert tree.root.is_leaf


def test_scripted_orbit_and_translate_shape():
    tree = resolve(generator("D", 4), Scripted(scripted_resolution("D", 4), max_depth=12))
    by_path = {node.chart.path_text(): node for node in tree.nodes()}
    moved = by_path["U_y/T_z"]
    assert moved.chart.orbit_factor == 2
    parent = by_path["U_y"]
    # translated chart is appended after the origin charts of the same parent
    assert parent.children[-1] is moved
    assert len(parent.children) == 4
    assert all(verify_jacobian(node.chart) for node in tree.nodes())
    assert all(total_transform_identity(tree, node.chart) for node in tree.nodes())


def test_scripted_rejects_blowup_on_finished_chart():
    from lctkit import ScriptError

    script = parse_script("blowup x y z\nchart x\nblowup x y z\nchart x")
    with pytest.raises(ScriptError):
        resolve(P("x^2 + y^2 + z^3"), Scripted(script, max_depth=10))


# -- full-tree invariants ----------------------------------------------------------


@pytest.mark.parametrize(
    "family,n",
    [("A", 5), ("D", 4), ("D", 5), ("D", 6), ("D", 7), ("E6", None), ("E7", None), ("E8", None)],
)
def test_catalogue_trees_verify(family, n):
    tree = resolve(generator(family, n), Scripted(scripted_resolution(family, n), max_depth=12))
    for node in tree.nodes():
        assert verify_jacobian(node.chart)
        assert total_transform_identity(tree, node.chart)
    # sibling charts of one blow-up agree on the new divisor's exponents
    for node in tree.nodes():
        born = {}
        for child in node.children:
            chart = child.chart
            if not chart.steps or not chart.steps[-1].label.startswith("U_"):
                continue
            v = chart.steps[-1].chart_variable
            key = chart.divisor_ids[v]
            pair = (chart.f_exponents[v], chart.jac_exponents[v])
            assert born.setdefault(key, pair) == pair
