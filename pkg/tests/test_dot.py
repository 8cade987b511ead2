"""Graphviz DOT export of nets and views."""

from __future__ import annotations

import pytest

from fnet.dot import UnknownTarget, export_dot
from fnet.parser import parse_model


def test_net_export_structure(fixture_model):
    text = export_dot(fixture_model, "CarComfort")
    assert text.startswith('digraph "CarComfort" {')
    assert text.endswith("}\n")
    # containers become clusters, leaves plain nodes
    assert 'subgraph "cluster_CLRequestProc"' in text
    assert '"CLRequestProc.ButtonOn" [label="ButtonOn", shape=box];' in text
    # instances are expanded under their instance names
    assert 'subgraph "cluster_left"' in text
    assert '"left.LockCtrl"' in text and '"right.LockCtrl"' in text
    # signal connectors become labelled edges
    assert (
        '"CLRequestProc" -> "CentralLocking" [label="DriverRequestCL"];'
        in text
    )
    assert (
        '"CLRequestProc.ButtonOn" -> "CLRequestProc" [label="StatusOn"];'
        in text
    )


def test_view_export_stereotype_styling(fixture_model):
    text = export_dot(fixture_model, "AutoLock")
    assert '"LockActuator" [label="LockActuator", shape=box, peripheries=2];' in text
    assert (
        '"VehicleState" [label="VehicleState", shape=box, style=filled, '
        "fillcolor=lightgrey];" in text
    )
    assert (
        '"CentralLocking" -> "LockActuator" [label="M", style=dashed];'
        in text
    )
    assert '[label="VehicleSpeed"]' in text


def test_export_is_byte_deterministic(fixture_model):
    for target in ("CarComfort", "AutoLock", "Basic", "Premium"):
        assert export_dot(fixture_model, target) == export_dot(
            fixture_model, target
        )


def test_export_single_block_net():
    model = parse_model([("t.fnet", "net Solo { block Only; }")])
    assert export_dot(model, "Solo") == (
        'digraph "Solo" {\n'
        "  compound=true;\n"
        '  "Only" [label="Only", shape=box];\n'
        "}\n"
    )


def test_export_connector_without_signal_in_view():
    model = parse_model(
        [
            (
                "t.fnet",
                "net N { block A; block B; A -> B : Sig; }\n"
                "view V for N { block A; block B; A -> B; }",
            )
        ]
    )
    text = export_dot(model, "V")
    assert '"A" -> "B";' in text


def test_export_unknown_target(fixture_model):
    with pytest.raises(UnknownTarget):
        export_dot(fixture_model, "Nothing")
