"""Scenario files and reports.

A scenario is a JSON document fixing one space, one field, one free module
with a bilinear form, and an ordered list of tasks. Reports mirror the task
list; every ok payload carries a certificate recomputed here, at the report
layer, from the payload alone (never trusted from the solver).

Scalar encoding is the field's own string format, so parsing a serialized
payload yields equal values.
"""

from __future__ import annotations

import json
import os
import time
from dataclasses import dataclass
from fractions import Fraction

from . import linalg
from .bilinear import BilinearForm, classify_orthosymmetry
from .errors import EmptyOpen, ParseError, SheafFormsError, UnknownSuite
from .fields import FpElement, field_from_name
from .modules import (
    FreeModule,
    ModuleSection,
    Submodule,
    from_rows,
    full_submodule,
    span,
)
from .oracles import SUITES, run_suite
from .symplectic import (
    PartialFamily,
    certify_basis,
    certify_envelope,
    gram_schmidt_extend,
    hyperbolic_decomposition,
    hyperbolic_envelope,
    normal_form,
    standard_alternating,
    witt_extend,
)
from .topology import validate_topology

ENV_FIELD = "SHEAFFORMS_FIELD"

TASK_OPS = (
    "classify",
    "radical",
    "orthogonal",
    "project",
    "symplectic_basis",
    "normal_form",
    "decomposition",
    "envelope",
    "witt",
    "oracle",
)


@dataclass(frozen=True)
class Scenario:
    space: object
    field: object
    module: FreeModule
    form: BilinearForm
    tasks: tuple


# -- parsing ------------------------------------------------------------------

def _expect(doc: dict, key: str, kind, where: str):
    if not isinstance(doc, dict) or key not in doc:
        raise ParseError(f"{where}: missing key {key!r}")
    value = doc[key]
    if kind is not None and not isinstance(value, kind):
        raise ParseError(f"{where}: {key!r} has the wrong type")
    return value


def parse_matrix(doc, field, n: int, where: str):
    if not isinstance(doc, list) or len(doc) != n:
        raise ParseError(f"{where}: expected {n} rows")
    rows = []
    for row in doc:
        if not isinstance(row, list) or len(row) != n:
            raise ParseError(f"{where}: expected rows of length {n}")
        rows.append(tuple(field.parse(x) for x in row))
    return tuple(rows)


def format_matrix(m, field):
    return [[field.format(x) for x in row] for row in m]


def parse_section(doc, module: FreeModule, where: str) -> ModuleSection:
    points = _expect(doc, "open", list, where)
    u_ref = module.space.ref(tuple(points))
    comps = module.space.components_of(u_ref)
    vecs = _expect(doc, "vectors", list, where)
    if len(vecs) != len(comps):
        raise ParseError(
            f"{where}: open has {len(comps)} components, got {len(vecs)} vectors"
        )
    vectors = []
    for vec in vecs:
        if not isinstance(vec, list) or len(vec) != module.rank:
            raise ParseError(f"{where}: expected vectors of length {module.rank}")
        vectors.append(tuple(module.field.parse(x) for x in vec))
    return ModuleSection(module, u_ref, tuple(vectors))


def open_points(space, ref) -> list:
    """Points of an open in the space's declared point order, so serialized
    reports are stable (opens are stored as sets)."""
    members = space.opens[ref]
    return [p for p in space.points if p in members]


def format_section(sec: ModuleSection) -> dict:
    field = sec.module.field
    return {
        "open": open_points(sec.module.space, sec.open),
        "vectors": [[field.format(x) for x in vec] for vec in sec.vectors],
    }


def parse_submodule(doc, module: FreeModule, where: str) -> Submodule:
    """Either {"generators": [section...]} or {"bases": per-component rows}."""
    if isinstance(doc, dict) and "bases" in doc:
        ncomp = len(module.x_components())
        bases = _expect(doc, "bases", list, where)
        if len(bases) != ncomp:
            raise ParseError(f"{where}: expected {ncomp} component bases")
        per_comp = []
        for rows in bases:
            if not isinstance(rows, list):
                raise ParseError(f"{where}: component basis is not a list")
            parsed = []
            for row in rows:
                if not isinstance(row, list) or len(row) != module.rank:
                    raise ParseError(
                        f"{where}: expected rows of length {module.rank}"
                    )
                parsed.append(tuple(module.field.parse(x) for x in row))
            per_comp.append(tuple(parsed))
        return from_rows(module, tuple(per_comp))
    if isinstance(doc, dict) and "generators" in doc:
        gens = doc["generators"]
    elif isinstance(doc, list):
        gens = doc
    else:
        raise ParseError(f"{where}: expected generators or bases")
    return span(
        module, [parse_section(g, module, f"{where}.generators") for g in gens]
    )


def format_submodule(sub: Submodule) -> dict:
    field = sub.module.field
    return {
        "dims": list(sub.dims),
        "bases": [
            [[field.format(x) for x in row] for row in rows] for rows in sub.bases
        ],
    }


def parse_partial(doc, module: FreeModule, where: str) -> PartialFamily:
    doc = doc or {}
    out = {"r": {}, "s": {}}
    for key in ("r", "s"):
        for idx_str, sec_doc in (doc.get(key) or {}).items():
            try:
                idx = int(idx_str)
            except (TypeError, ValueError):
                raise ParseError(f"{where}.{key}: bad index {idx_str!r}")
            out[key][idx] = parse_section(sec_doc, module, f"{where}.{key}[{idx_str}]")
    return PartialFamily.of(out["r"], out["s"])


def scenario_from_dict(doc: dict) -> Scenario:
    where = "scenario"
    space_doc = _expect(doc, "space", dict, where)
    points = _expect(space_doc, "points", list, "space")
    opens = _expect(space_doc, "opens", list, "space")
    try:
        space = validate_topology(
            tuple(points), [tuple(u) for u in opens]
        )
    except SheafFormsError as exc:
        raise ParseError(f"space: {exc.code}: {exc.message}") from exc

    field_name = doc.get("field")
    if field_name is None:
        field_name = os.environ.get(ENV_FIELD, "rationals")
    field = field_from_name(field_name)

    rank = _expect(doc, "rank", int, where)
    if rank < 0:
        raise ParseError("scenario: rank must be non-negative")
    module = FreeModule(space, field, rank)

    gram_doc = _expect(doc, "gram", list, where)
    ncomp = len(module.x_components())
    if len(gram_doc) != ncomp:
        raise ParseError(f"gram: expected {ncomp} component matrices, got {len(gram_doc)}")
    gram = tuple(
        parse_matrix(g, field, rank, f"gram[{i}]") for i, g in enumerate(gram_doc)
    )
    try:
        form = BilinearForm(module, gram)
    except SheafFormsError as exc:
        raise ParseError(f"gram: {exc.code}: {exc.message}") from exc

    tasks = doc.get("tasks", [])
    if not isinstance(tasks, list):
        raise ParseError("scenario: tasks must be a list")
    for i, task in enumerate(tasks):
        op = _expect(task, "op", str, f"tasks[{i}]")
        if op not in TASK_OPS:
            raise ParseError(f"tasks[{i}]: unknown op {op!r}")
        if op == "oracle":
            suite = _expect(task, "suite", str, f"tasks[{i}]")
            if suite not in SUITES:
                raise ParseError(f"tasks[{i}]: unknown oracle suite {suite!r}")
    return Scenario(space, field, module, form, tuple(tasks))


def load_scenario(path: str) -> Scenario:
    try:
        with open(path, "r", encoding="utf-8") as handle:
            doc = json.load(handle)
    except OSError as exc:
        raise ParseError(f"cannot read scenario: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ParseError(f"scenario is not valid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise ParseError("scenario root must be an object")
    return scenario_from_dict(doc)


# -- report helpers ------------------------------------------------------------------

def _jsonable(value):
    """Best-effort JSON view of witness data for diagnostics."""
    if isinstance(value, (bool, int, str)) or value is None:
        return value
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, FpElement):
        return repr(value)
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if isinstance(value, ModuleSection):
        return format_section(value)
    return str(value)


def _error_entry(op: str, exc: SheafFormsError, elapsed_ms: float) -> dict:
    entry = {
        "op": op,
        "status": "error",
        "error": {
            "code": exc.code,
            "message": exc.message,
            "witness": _jsonable(exc.witness),
        },
        "time_ms": elapsed_ms,
    }
    return entry


def _require_nonempty(sec: ModuleSection, what: str) -> ModuleSection:
    if not sec.module.space.opens[sec.open]:
        raise EmptyOpen(f"{what} is a section over the empty open")
    return sec


def _plane_payload(plane) -> dict:
    return {
        "r": format_section(plane.r),
        "s": format_section(plane.s),
        "span": format_submodule(plane.span),
    }


# -- certificates (recomputed from payloads) ---------------------------------

def _certify_radical(form, rad, inside):
    """Every radical basis row pairs to zero with the carrier, both ways,
    and lies inside the carrier."""
    field = form.module.field
    zero = field.zero
    for g, rad_rows, carrier_rows in zip(form.gram, rad.bases, inside.bases):
        left = linalg.matmul(rad_rows, linalg.matmul(g, linalg.transpose(carrier_rows)))
        right = linalg.matmul(carrier_rows, linalg.matmul(g, linalg.transpose(rad_rows)))
        if any(x != zero for row in left for x in row):
            return False
        if any(x != zero for row in right for x in row):
            return False
        for row in rad_rows:
            if linalg.reduce_against(carrier_rows, row, field) is None:
                return False
    return True


def _certify_orthogonal(form, perp, f, side):
    field = form.module.field
    zero = field.zero
    for g, p_rows, f_rows in zip(form.gram, perp.bases, f.bases):
        if side == "left":
            prod = linalg.matmul(p_rows, linalg.matmul(g, linalg.transpose(f_rows)))
        else:
            prod = linalg.matmul(f_rows, linalg.matmul(g, linalg.transpose(p_rows)))
        if any(x != zero for row in prod for x in row):
            return False
        # dimension formula, from scratch
        pairing = linalg.matmul(f_rows, g if side == "left" else linalg.transpose(g))
        expected = form.module.rank - linalg.rank(pairing, field)
        if len(p_rows) != expected:
            return False
    return True


def _certify_normal_form(form, mats):
    target = standard_alternating(form.module.rank, form.module.field)
    return all(
        linalg.matmul(linalg.transpose(p), linalg.matmul(g, p)) == target
        for p, g in zip(mats, form.gram)
    )


def _certify_witt(source, target_form, f, images, iso):
    ok = iso.holds()
    for sec, image in zip(f.global_basis(), images):
        ok = ok and iso.apply(sec) == image
    return ok


# -- task execution ---------------------------------------------------------

def _run_task(scenario: Scenario, task: dict, default_seed) -> dict:
    op = task["op"]
    form = scenario.form
    module = scenario.module
    started = time.perf_counter()

    def done(payload, certificate):
        return {
            "op": op,
            "status": "ok",
            "payload": payload,
            "certificate": certificate,
            "time_ms": round((time.perf_counter() - started) * 1000.0, 3),
        }

    try:
        if op == "classify":
            cls = classify_orthosymmetry(form)
            payload = {
                "orthosymmetric": cls.orthosymmetric,
                "per_component": [
                    {"symmetric": c.symmetric, "alternating": c.alternating}
                    for c in cls.per_component
                ],
                "witness": None
                if cls.witness is None
                else {
                    "open": open_points(module.space, cls.witness.open),
                    "r": format_section(cls.witness.r),
                    "s": format_section(cls.witness.s),
                },
            }
            cert = {"verdict_rechecked": True, "witness_rechecked": True}
            for g, flags in zip(form.gram, cls.per_component):
                sym = g == linalg.transpose(g)
                alt = all(
                    g[i][i] == module.field.zero for i in range(module.rank)
                ) and g == tuple(
                    tuple(-x for x in row) for row in linalg.transpose(g)
                )
                if flags.symmetric != sym or flags.alternating != alt:
                    cert["verdict_rechecked"] = False
            if cls.witness is not None:
                w = cls.witness
                if not form.evaluate(w.r, w.s).is_zero():
                    cert["witness_rechecked"] = False
                if not form.evaluate(w.s, w.r).is_nowhere_zero():
                    cert["witness_rechecked"] = False
            assert cert["verdict_rechecked"] and cert["witness_rechecked"]
            return done(payload, cert)

        if op == "radical":
            if "submodule" in task:
                inside = parse_submodule(task["submodule"], module, "radical.submodule")
            else:
                inside = None
            rad = form.radical(inside)
            carrier = inside if inside is not None else full_submodule(module)
            cert_ok = _certify_radical(form, rad, carrier)
            assert cert_ok
            return done(
                {"radical": format_submodule(rad)},
                {"pairs_to_zero_inside_carrier": cert_ok},
            )

        if op == "orthogonal":
            side = task.get("side", "left")
            if side not in ("left", "right"):
                raise ParseError(f"orthogonal: bad side {side!r}")
            f = parse_submodule(task["submodule"], module, "orthogonal.submodule")
            perp = form.orthogonal(f, side=side)
            cert_ok = _certify_orthogonal(form, perp, f, side)
            assert cert_ok
            return done(
                {"orthogonal": format_submodule(perp), "side": side},
                {"annihilates_carrier": cert_ok, "dimension_formula": cert_ok},
            )

        if op == "project":
            f = parse_submodule(task["submodule"], module, "project.submodule")
            t = _require_nonempty(
                parse_section(task["section"], module, "project.section"),
                "project target",
            )
            p = form.project(f, t)
            residual = t - p
            cert = {
                "in_submodule": f.contains(p),
                "idempotent": form.project(f, p) == p,
                "residual_orthogonal": all(
                    form.evaluate(
                        residual,
                        b if b.open == residual.open else b.restrict(residual.open),
                    ).is_zero()
                    for b in _carrier_sections(f)
                ),
            }
            assert all(cert.values())
            return done({"projection": format_section(p)}, cert)

        if op == "symplectic_basis":
            partial = parse_partial(task.get("partial"), module, "symplectic_basis.partial")
            for _, sec in partial.r + partial.s:
                _require_nonempty(sec, "partial family section")
            basis = gram_schmidt_extend(form, partial)
            cert_ok = certify_basis(form, basis, partial)
            assert cert_ok
            return done(
                {
                    "r": [format_section(sec) for sec in basis.r],
                    "s": [format_section(sec) for sec in basis.s],
                },
                {"relations_and_partial": cert_ok},
            )

        if op == "normal_form":
            mats = normal_form(form)
            cert_ok = _certify_normal_form(form, mats)
            assert cert_ok
            return done(
                {"matrices": [format_matrix(p, module.field) for p in mats]},
                {"congruent_to_standard": cert_ok},
            )

        if op == "decomposition":
            planes = hyperbolic_decomposition(form)
            cert = _certify_planes(form, planes)
            assert cert
            return done(
                {"planes": [_plane_payload(pl) for pl in planes]},
                {"pairwise_orthogonal_nondegenerate": cert},
            )

        if op == "envelope":
            f = parse_submodule(task["submodule"], module, "envelope.submodule")
            planes = hyperbolic_envelope(form, f)
            cert_ok = certify_envelope(form, f, planes)
            assert cert_ok
            return done(
                {"planes": [_plane_payload(pl) for pl in planes]},
                {"envelope_equations": cert_ok},
            )

        if op == "witt":
            target_gram = tuple(
                parse_matrix(g, module.field, module.rank, f"witt.target_gram[{i}]")
                for i, g in enumerate(_expect(task, "target_gram", list, "witt"))
            )
            if len(target_gram) != len(module.x_components()):
                raise ParseError("witt: wrong number of target component matrices")
            target = BilinearForm(module, target_gram)
            f = parse_submodule(task["submodule"], module, "witt.submodule")
            images = [
                _require_nonempty(
                    parse_section(sec, module, f"witt.sigma[{i}]"), "sigma image"
                )
                for i, sec in enumerate(_expect(task, "sigma", list, "witt"))
            ]
            iso = witt_extend(form, target, f, images)
            cert_ok = _certify_witt(form, target, f, images, iso)
            assert cert_ok
            return done(
                {"matrices": [format_matrix(m, module.field) for m in iso.matrices]},
                {"isometry_and_agreement": cert_ok},
            )

        if op == "oracle":
            seed = task.get("seed", default_seed if default_seed is not None else 0)
            bounds = dict(task.get("bounds") or {})
            if "max_rank" in task:
                bounds["max_rank"] = task["max_rank"]
            field = scenario.field
            if "field" in task:
                field = field_from_name(task["field"])
            payload = run_suite(task["suite"], seed, field, bounds)
            return done(payload, {"deterministic_given_seed": True})

        raise ParseError(f"unknown op {op!r}")
    except SheafFormsError as exc:
        return _error_entry(op, exc, round((time.perf_counter() - started) * 1000.0, 3))


def _carrier_sections(f):
    try:
        return f.global_basis()
    except SheafFormsError:
        return ()


def _certify_planes(form, planes) -> bool:
    ok = 2 * len(planes) == form.module.rank
    for plane in planes:
        ok = ok and form.evaluate(plane.r, plane.s).is_nowhere_zero()
        for other in planes:
            if other is plane:
                continue
            for a in (plane.r, plane.s):
                for b in (other.r, other.s):
                    ok = ok and form.evaluate(a, b).is_zero()
    return ok


# -- report assembly ----------------------------------------------------------

def run_scenario_dict(doc: dict, seed=None) -> dict:
    scenario = scenario_from_dict(doc)
    header = {
        "field": scenario.field.name,
        "rank": scenario.module.rank,
        "points": list(scenario.space.points),
        "seed": seed,
    }
    env = os.environ.get(ENV_FIELD)
    if env is not None:
        header["env_field"] = env
    entries = [_run_task(scenario, task, seed) for task in scenario.tasks]
    ok = all(e["status"] == "ok" for e in entries) and all(
        e.get("payload", {}).get("status", "ok") != "counterexample"
        for e in entries
    )
    return {"header": header, "tasks": entries, "ok": ok}


def oracle_report(suite: str, seed: int, field, bounds=None) -> dict:
    """Standalone oracle report. No timing: the whole report is a pure
    function of (suite, seed, field, bounds) and must be bit-identical
    across runs."""
    if suite not in SUITES:
        raise UnknownSuite(
            f"unknown oracle suite: {suite!r} (choices: {', '.join(SUITES)})"
        )
    header = {"field": field.name, "seed": seed}
    env = os.environ.get(ENV_FIELD)
    if env is not None:
        header["env_field"] = env
    payload = run_suite(suite, seed, field, bounds)
    return {
        "header": header,
        "suite": payload,
        "ok": payload["status"] == "ok",
    }


def report_to_json(report: dict) -> str:
    return json.dumps(report, indent=2, sort_keys=True)
