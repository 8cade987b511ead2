"""Handcrafted fixture mutations, one entry per diagnostic code.

Each entry lists source texts that must produce exactly the intended
error code (warnings are allowed); M04 is asserted on the machine's own
report because the offending view necessarily reports its own defect too.
"""

from __future__ import annotations

from dataclasses import dataclass

from conftest import FIXTURES_DIR

NET = (FIXTURES_DIR / "carcomfort_net.fnet").read_text(encoding="utf-8")


def add_to_net(extra: str) -> str:
    """Insert declarations before the net's closing brace."""
    body, brace, tail = NET.rpartition("}")
    assert brace
    return body + extra.rstrip() + "\n" + brace + tail


@dataclass(frozen=True)
class Mutation:
    code: str
    sources: tuple[str, ...]
    target: str | None = None  # restrict assertion to one report


MUTATIONS: list[Mutation] = [
    # WF01: duplicate sibling names
    Mutation("WF01", (add_to_net("  block CentralLocking;"),)),
    Mutation("WF01", (add_to_net("  block Extra { block Zed; block Zed; }"),)),
    # WF02: unresolved connector endpoints
    Mutation("WF02", (add_to_net("  CentralLocking -> Nowhere : SigX;"),)),
    Mutation(
        "WF02",
        (add_to_net("  CLRequestProc.Missing -> CentralLocking : SigX;"),),
    ),
    # WF03: complete-net connector without a signal
    Mutation("WF03", (add_to_net("  CLRequestProc -> CentralLocking;"),)),
    Mutation(
        "WF03",
        (add_to_net("  def Pair { block One; block Two; One -> Two; }"),),
    ),
    # WF04: view-only stereotypes inside the complete net
    Mutation("WF04", (add_to_net("  env block LockActuator;"),)),
    Mutation("WF04", (add_to_net("  CLRequestProc -[M]-> CentralLocking;"),)),
    # WF05: recursive instantiation
    Mutation("WF05", (add_to_net("  def Loop { use inner: Loop; }"),)),
    Mutation(
        "WF05",
        (
            add_to_net(
                "  def Ping { use pong: Pong; }\n"
                "  def Pong { use ping: Ping; }"
            ),
        ),
    ),
    # C1: view block absent from the net / ambiguous
    Mutation("C1", (NET, "view Bad for CarComfort { block Ghost; }")),
    Mutation("C1", (NET, "view Bad for CarComfort { block LockCtrl; }")),
    # C2: view containment contradicting the net
    Mutation(
        "C2",
        (
            add_to_net(
                "  block Cabinet { block Sensor { block Inner; } }\n"
                "  block Sensor;"
            ),
            "view Bad for CarComfort { block Sensor { block Inner; } }",
        ),
    ),
    Mutation(
        "C2",
        (
            add_to_net(
                "  block Garage { block Panel { block Latch; } }\n"
                "  block Panel;"
            ),
            "view Bad for CarComfort { block Panel { block Latch; } }",
        ),
    ),
    # C3: net containment hidden by the view
    Mutation(
        "C3",
        (NET, "view Bad for CarComfort { block CLRequestProc; block ButtonOn; }"),
    ),
    Mutation(
        "C3",
        (NET, "view Bad for CarComfort { block CentralLocking; block EvalSpeed; }"),
    ),
    # C4: connector with no counterpart in the net
    Mutation(
        "C4",
        (
            NET,
            "view Bad for CarComfort {\n"
            "  block CLRequestProc;\n"
            "  block CentralLocking;\n"
            "  CentralLocking -> CLRequestProc : DriverRequestCL;\n"
            "}",
        ),
    ),
    Mutation(
        "C4",
        (
            NET,
            "view Bad for CarComfort {\n"
            "  block CLRequestProc;\n"
            "  block CentralLocking;\n"
            "  CLRequestProc -> CentralLocking : WrongSignal;\n"
            "}",
        ),
    ),
    # C5: endpoint lifted to a super-block although the exact block is shown
    Mutation(
        "C5",
        (
            add_to_net(
                "  CLRequestProc.ButtonOn -> CentralLocking : ButtonPress;"
            ),
            "view Bad for CarComfort {\n"
            "  block CLRequestProc { block ButtonOn; }\n"
            "  block CentralLocking;\n"
            "  CLRequestProc -> CentralLocking : ButtonPress;\n"
            "}",
        ),
    ),
    Mutation(
        "C5",
        (
            NET,
            "view Bad for CarComfort {\n"
            "  block CLRequestProc { block ButtonOn; }\n"
            "  CLRequestProc -> CLRequestProc : StatusOn;\n"
            "}",
        ),
    ),
    # M01: mode binds a view that does not exist
    Mutation(
        "M01",
        (
            NET,
            "modes Broken for CarComfort {\n"
            "  initial mode Normal uses complete;\n"
            "  mode Deg uses view Missing;\n"
            "  Normal -> Deg when fault(StatusOn);\n"
            "  Deg -> Normal when reset;\n"
            "}",
        ),
    ),
    # M02: fault() names a signal absent from the net
    Mutation(
        "M02",
        (
            NET,
            "modes Broken for CarComfort {\n"
            "  initial mode Normal uses complete;\n"
            "  mode Deg uses complete;\n"
            "  Normal -> Deg when fault(NoSuchSignal);\n"
            "  Deg -> Normal when reset;\n"
            "}",
        ),
    ),
    # M03: mode unreachable from the initial mode
    Mutation(
        "M03",
        (
            NET,
            "modes Broken for CarComfort {\n"
            "  initial mode Normal uses complete;\n"
            "  mode Deg uses complete;\n"
            "  mode Extra uses complete;\n"
            "  Normal -> Deg when fault(StatusOn);\n"
            "  Deg -> Normal when reset;\n"
            "}",
        ),
    ),
    # M04: mode binds an inconsistent view (the view reports its own C1)
    Mutation(
        "M04",
        (
            NET,
            "view Bad for CarComfort { block Ghost; }",
            "modes Broken for CarComfort {\n"
            "  initial mode Normal uses complete;\n"
            "  mode Deg uses view Bad;\n"
            "  Normal -> Deg when fault(StatusOn);\n"
            "  Deg -> Normal when reset;\n"
            "}",
        ),
        target="Broken",
    ),
    # V01: variant / feature entry names no view
    Mutation(
        "V01",
        (NET, "variants G for CarComfort { variant Missing; }"),
    ),
    Mutation(
        "V01",
        (NET, "features for CarComfort { feature Missing; }"),
    ),
]
