"""Variant coverage reports and change-impact traces."""

from __future__ import annotations

import random

import pytest

from fnet.analysis import (
    InconsistentVariantView,
    UnknownGroup,
    UnknownSubject,
    trace,
    variant_report,
)
from fnet.hierarchy import expand
from fnet.model import Model, VariantGroup, ViewRef
from fnet.parser import parse_model

from genmodels import gen_net, project_view
from oracle import brute_paths


def parse_sources(*sources: str):
    return parse_model(
        [(f"m{i}.fnet", text) for i, text in enumerate(sources)]
    )


def test_variant_report_fixture(fixture_model):
    report = variant_report("CentralLockingVariants", fixture_model)
    assert report.group == "CentralLockingVariants"
    assert report.per_variant["Basic"]["blocks"] == ("CentralLocking",)
    assert report.per_variant["Basic"]["signals"] == ("DriverRequestCL",)
    assert report.per_variant["Premium"]["blocks"] == (
        "CentralLocking", "CentralLocking.EvalSpeed",
    )
    assert report.per_variant["Premium"]["signals"] == (
        "DriverRequestCL", "OpenClose", "VehicleSpeed",
    )
    assert report.common == ("CentralLocking",)
    assert report.variant_specific == {
        "CentralLocking.EvalSpeed": ("Premium",),
    }
    assert report.uncovered == (
        "CLRequestProc",
        "CLRequestProc.ButtonOff",
        "CLRequestProc.ButtonOn",
        "left",
        "left.LockCtrl",
        "right",
        "right.LockCtrl",
    )


def test_variant_report_json_is_sorted(fixture_model):
    data = variant_report("CentralLockingVariants", fixture_model)
    json_dict = data.to_json_dict()
    assert json_dict["common"] == ["CentralLocking"]
    assert json_dict["variant_specific"] == {
        "CentralLocking.EvalSpeed": ["Premium"],
    }
    assert json_dict["uncovered"] == sorted(json_dict["uncovered"])


def test_variant_report_unknown_group(fixture_model):
    with pytest.raises(UnknownGroup):
        variant_report("Nope", fixture_model)


def test_variant_report_rejects_dangling_member():
    model = parse_sources(
        "net N { block A; }",
        "variants G for N { variant Missing; }",
    )
    with pytest.raises(InconsistentVariantView):
        variant_report("G", model)


def test_variant_report_rejects_inconsistent_member():
    model = parse_sources(
        "net N { block A; }",
        "view V variant for N { block Ghost; }",
        "variants G for N { variant V; }",
    )
    with pytest.raises(InconsistentVariantView):
        variant_report("G", model)


def test_full_projection_leaves_nothing_uncovered():
    model = parse_sources(
        "net N { block A { block B; } block C; A.B -> C : Sig; }",
        "view All variant for N {\n"
        "  block A { block B; }\n"
        "  block C;\n"
        "  A.B -> C : Sig;\n"
        "}",
        "variants G for N { variant All; }",
    )
    report = variant_report("G", model)
    assert report.uncovered == ()
    assert report.common == ("A", "A.B", "C")
    assert report.variant_specific == {}


def test_variant_report_matches_set_algebra_on_random_models():
    rng = random.Random(503)
    for _ in range(60):
        net = gen_net(rng, max_blocks=8, max_connectors=8)
        views = {
            f"View{i}": project_view(
                rng, net, n_ops=rng.randint(0, 6),
                name=f"View{i}", kind="variant",
            )
            for i in range(rng.randint(1, 3))
        }
        group = VariantGroup(
            name="G", target_net=net.name,
            members=tuple(ViewRef(name) for name in sorted(views)),
        )
        model = Model(
            net=net, views=views, machines={},
            variant_groups={"G": group}, feature_views=(),
        )
        report = variant_report("G", model)

        # brute element sets: projected views show exactly their own paths,
        # so membership can be recomputed from the view block trees alone
        def view_blocks(view) -> set[tuple[str, ...]]:
            out = set()

            def visit(node, prefix, net_paths):
                path = prefix + (node.name,)
                matches = [
                    p for p in net_paths
                    if p[-1] == path[-1] and _subseq(path, p)
                ]
                if path in net_paths:
                    matches = [path]
                if len(matches) == 1:
                    out.add(matches[0])
                for child in node.children:
                    visit(child, path, net_paths)

            paths = brute_paths(net)
            for root in view.roots:
                visit(root, (), paths)
            return out

        def _subseq(short, long):
            i = 0
            for seg in long:
                if i < len(short) and short[i] == seg:
                    i += 1
            return i == len(short)

        member_blocks = {
            name: view_blocks(view) for name, view in views.items()
        }
        union = set().union(*member_blocks.values())
        common = set.intersection(*member_blocks.values())
        assert set(report.common) == {".".join(p) for p in common}
        assert set(report.uncovered) == {
            ".".join(p) for p in set(brute_paths(net)) - union
        }
        for path, variants in report.variant_specific.items():
            segs = tuple(path.split("."))
            assert segs in union and segs not in common
            assert list(variants) == sorted(
                n for n, blocks in member_blocks.items() if segs in blocks
            )


def test_trace_block_fixture(fixture_model):
    report = trace("CentralLocking", fixture_model)
    assert report.kind == "block"
    assert sorted(report.referencing_views) == [
        ("AutoLock", "feature"),
        ("Basic", "variant"),
        ("CarComfortDegradation", "mode"),
        ("Premium", "variant"),
    ]
    assert report.referencing_machines == ("CarComfortModes",)


def test_trace_nested_block_fixture(fixture_model):
    report = trace("CentralLocking.EvalSpeed", fixture_model)
    assert sorted(report.referencing_views) == [
        ("AutoLock", "feature"),
        ("CarComfortDegradation", "mode"),
        ("Premium", "variant"),
    ]


def test_trace_signal_fixture(fixture_model):
    report = trace("StatusOn", fixture_model)
    assert report.kind == "signal"
    assert report.referencing_views == ()
    # referenced only through a fault trigger
    assert report.referencing_machines == ("CarComfortModes",)

    open_close = trace("OpenClose", fixture_model)
    assert sorted(open_close.referencing_views) == [
        ("CarComfortDegradation", "mode"),
        ("Premium", "variant"),
    ]


def test_trace_unreferenced_block_gives_empty_lists(fixture_model):
    report = trace("CLRequestProc.ButtonOn", fixture_model)
    assert report.referencing_views == ()
    assert report.referencing_machines == ()


def test_trace_unknown_subject(fixture_model):
    with pytest.raises(UnknownSubject):
        trace("NoSuchThing", fixture_model)
    with pytest.raises(UnknownSubject):
        trace("VehicleSpeed", fixture_model)  # view-only signal


def test_trace_block_name_takes_precedence_over_signal():
    model = parse_sources(
        "net N { block Sig; block B; Sig -> B : Sig; }",
        "view V for N { block B; }",
    )
    report = trace("Sig", model)
    assert report.kind == "block"


def test_projected_views_trace_their_own_blocks():
    rng = random.Random(601)
    for _ in range(30):
        net = gen_net(rng, max_blocks=8, max_connectors=6)
        view = project_view(rng, net, name="View0")
        model = Model(
            net=net, views={"View0": view}, machines={},
            variant_groups={}, feature_views=(),
        )
        xnet = expand(net)
        shown = set()

        def visit(node, prefix):
            path = prefix + (node.name,)
            shown.add(path)
            for child in node.children:
                visit(child, path)

        for root in view.roots:
            visit(root, ())
        for path in xnet.paths():
            report = trace(".".join(path), model)
            hit = ("View0", "generic") in report.referencing_views
            # a projected view identifies exactly the nodes it retains,
            # whose view paths are subsequences of the net paths
            assert hit == any(
                vp[-1] == path[-1] and _subseq(vp, path) and
                _identifies(vp, path, xnet)
                for vp in shown
            )


def _subseq(short, long):
    i = 0
    for seg in long:
        if i < len(short) and short[i] == seg:
            i += 1
    return i == len(short)


def _identifies(view_path, net_path, xnet):
    if xnet.has_path(view_path):
        return view_path == net_path
    cands = [
        p for p in xnet.paths()
        if p[-1] == view_path[-1] and _subseq(view_path, p)
    ]
    return cands == [net_path]
