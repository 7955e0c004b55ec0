"""JSON interchange for every serializable object in the package.

Rationals always serialize as strings ("p/q" or "p"); decimal strings are
accepted on input and converted exactly.  Loaders are lenient about raw JSON
numbers for convenience, emitters are strict.
"""

from __future__ import annotations

import json

from .canonical import CanonicalForm, Different, Equal, EqualUpToAffine
from .exact import rat, rat_str
from .minimality import KIND_FRESH, MinimalityReport, RepresentationFamily
from .network import Breakline, EffectiveTuple, Neuron, ShallowNet
from .pwa import PWASpec, flat_breaklines, parse_pwa
from .synthesis import Violation


def net_to_dict(net: ShallowNet) -> dict:
    return {
        "d0": net.d0,
        "d1": net.d1,
        "W1": [[rat_str(e) for e in row] for row in net.w1],
        "b1": [rat_str(e) for e in net.b1],
        "W2": [rat_str(e) for e in net.w2],
        "b2": rat_str(net.b2),
    }


def net_from_dict(data: dict) -> ShallowNet:
    net = ShallowNet(
        tuple(tuple(rat(e) for e in row) for row in data["W1"]),
        tuple(rat(e) for e in data["b1"]),
        tuple(rat(e) for e in data["W2"]),
        rat(data["b2"]),
    )
    if "d0" in data and net.d0 != data["d0"]:
        raise ValueError("d0 does not match the shape of W1")
    if "d1" in data and net.d1 != data["d1"]:
        raise ValueError("d1 does not match the shape of W1")
    return net


def _breakline_to_dict(bl: Breakline) -> dict:
    return {"d": list(bl.direction), "q": rat_str(bl.offset)}


def _breakline_from_dict(data: dict) -> Breakline:
    return Breakline(tuple(int(e) for e in data["d"]), rat(data["q"]))


def tuple_to_dict(t: EffectiveTuple) -> dict:
    return {
        "neurons": [
            {
                "d": list(nr.breakline.direction),
                "q": rat_str(nr.breakline.offset),
                "kink": rat_str(nr.kink),
                "orient": nr.orientation,
            }
            for nr in t.neurons
        ],
        "bias": rat_str(t.out_bias),
    }


def tuple_from_dict(data: dict) -> EffectiveTuple:
    return EffectiveTuple(
        tuple(
            Neuron(
                Breakline(tuple(int(e) for e in nr["d"]), rat(nr["q"])),
                rat(nr["kink"]),
                int(nr["orient"]),
            )
            for nr in data["neurons"]
        ),
        rat(data["bias"]),
    )


def form_to_dict(cf: CanonicalForm) -> dict:
    return {
        "terms": [
            {"d": list(bl.direction), "q": rat_str(bl.offset), "kink": rat_str(k)}
            for bl, k in cf.terms
        ],
        "affine": [rat_str(e) for e in cf.affine],
        "bias": rat_str(cf.bias),
        "d0": cf.d0,
    }


def form_from_dict(data: dict) -> CanonicalForm:
    return CanonicalForm(
        tuple(
            (Breakline(tuple(int(e) for e in t["d"]), rat(t["q"])), rat(t["kink"]))
            for t in data["terms"]
        ),
        tuple(rat(e) for e in data["affine"]),
        rat(data["bias"]),
        int(data["d0"]),
    )


def family_to_dict(fam: RepresentationFamily) -> dict:
    out = {
        "kind": fam.kind,
        "sigma": list(fam.sigma),
        "provenance": [j + 1 for j in fam.provenance],
        "tuples": [tuple_to_dict(t) for t in fam.tuples],
    }
    if fam.kind == KIND_FRESH:
        out["r_values"] = [rat_str(r) for r in fam.r_values]
    return out


def report_to_dict(report: MinimalityReport) -> dict:
    return {
        "case": report.case,
        "min_width": report.min_width,
        "families": [family_to_dict(f) for f in report.families],
        "components": [
            {"dim": dim, "count": str(count)} for dim, count in report.manifold_components
        ],
    }


def verdict_to_dict(result) -> dict:
    if isinstance(result, Equal):
        return {"verdict": "equal"}
    if isinstance(result, EqualUpToAffine):
        return {
            "verdict": "affine",
            "a_diff": [rat_str(e) for e in result.a_diff],
            "b_diff": rat_str(result.b_diff),
        }
    if isinstance(result, Different):
        return {"verdict": "different", "witness": _breakline_to_dict(result.witness)}
    raise TypeError(f"not an equivalence verdict: {result!r}")


def violation_to_dict(v: Violation) -> dict:
    return {
        "indices": [i + 1 for i in v.indices],
        "point": [rat_str(e) for e in v.point],
    }


def pwa_spec_from_dict(data: dict) -> PWASpec:
    expr = parse_pwa(data["expr"])
    bls = data.get("breaklines", "auto")
    if bls == "auto":
        breaklines = tuple(flat_breaklines(expr))
    else:
        breaklines = tuple(_breakline_from_dict(b) for b in bls)
    return PWASpec(expr, breaklines)


def load(path: str):
    """Load any known object from a JSON file, sniffing its schema by keys."""
    with open(path, encoding="utf-8") as fh:
        data = json.load(fh)
    return from_dict(data)


def from_dict(data: dict):
    if "W1" in data:
        return net_from_dict(data)
    if "neurons" in data:
        return tuple_from_dict(data)
    if "terms" in data:
        return form_from_dict(data)
    if "expr" in data:
        return pwa_spec_from_dict(data)
    raise ValueError("unrecognized JSON object (expected a net, tuple, form or PWA spec)")


def dumps(data: dict) -> str:
    """Deterministic serialization used everywhere output must be byte-stable."""
    return json.dumps(data, indent=2)
