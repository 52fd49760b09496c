"""Instance files: a structured JSON document describing one instance.

Ring constants are decimal strings (no word-size cap); rationals are "p/q"
in lowest terms; mod-n elements are decimal residues.  Structure constants
are sparse (i, j, k, "c") quadruples; matrices are dense row lists.  Export
is canonical (sorted keys, fixed element formatting), so equal instances
serialize byte-identically.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Optional

from .actions import ComoduleAlgebraData, WeakActionData
from .catalog import (
    CatalogEntry,
    algebra_from_quadruples,
    coalgebra_from_quadruples,
)
from .crossed import CleftData, build_crossed_product, validate_cocycle
from .errors import ParseError, ValidationError
from .hopf import (
    BialgebraData,
    HopfData,
    compute_antipode,
    compute_twisted_antipode,
)
from .linalg import LinearMap, free_module, tensor_module
from .rings import Ring, ring_from_descriptor

SUITES = ("hopf", "crossed", "smash", "duality", "cleft", "opposite", "all")


@dataclass
class InstanceFile:
    name: str
    description: str
    kind: str
    ring: Ring
    suite: str
    modules: dict            # name -> label list
    blocks: dict             # raw validated JSON blocks
    expected: dict = field(default_factory=dict)

    def to_entry(self) -> CatalogEntry:
        payload = _build_payload(self)
        return CatalogEntry(self.name, self.description, self.kind, self.ring,
                            dict(self.expected), None, payload,
                            u_span=self.blocks.get("U"),
                            v_span=self.blocks.get("V"))


def _fail(msg: str):
    raise ValidationError(msg)


def _need(doc, key, ctx):
    if key not in doc:
        _fail(f"{ctx}: missing {key!r}")
    return doc[key]


def _parse_quads(ring: Ring, quads, ranks, ctx):
    """(i, j, k, c) with per-slot range checks; errors name the quadruple."""
    out = []
    if not isinstance(quads, list):
        _fail(f"{ctx}: expected a list of quadruples")
    for q in quads:
        if not (isinstance(q, list) and len(q) == 4):
            _fail(f"{ctx}: malformed quadruple {q!r}")
        i, j, k, c = q
        for slot, (idx, bound) in enumerate(zip((i, j, k), ranks)):
            if not isinstance(idx, int) or not 0 <= idx < bound:
                _fail(f"{ctx}: index out of range in quadruple {q!r}")
        try:
            val = ring.parse(c) if isinstance(c, str) else ring.of(c)
        except (ValueError, TypeError, ZeroDivisionError) as exc:
            _fail(f"{ctx}: bad constant in quadruple {q!r} ({exc})")
        out.append((i, j, k, val))
    return out


def _parse_vector(ring: Ring, entries, length, ctx):
    if not isinstance(entries, list) or len(entries) != length:
        _fail(f"{ctx}: expected a vector of length {length}")
    try:
        return tuple(ring.parse(x) if isinstance(x, str) else ring.of(x)
                     for x in entries)
    except (ValueError, TypeError, ZeroDivisionError) as exc:
        _fail(f"{ctx}: bad vector entry ({exc})")


def _parse_matrix(ring: Ring, rows, nrows, ncols, ctx):
    if not isinstance(rows, list) or len(rows) != nrows:
        _fail(f"{ctx}: expected {nrows} matrix rows")
    return [_parse_vector(ring, row, ncols, ctx) for row in rows]


def parse_instance(path) -> InstanceFile:
    """Read, syntax-check and semantically validate an instance file."""
    try:
        with open(path, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: invalid JSON at line {exc.lineno}, "
                         f"column {exc.colno}: {exc.msg}") from exc
    return parse_instance_dict(doc, str(path))


def parse_instance_dict(doc: dict, where: str = "<memory>") -> InstanceFile:
    if not isinstance(doc, dict):
        raise ParseError(f"{where}: top level must be an object")
    name = _need(doc, "name", where)
    kind = _need(doc, "kind", where)
    if kind not in ("hopf", "crossed", "cleft"):
        _fail(f"{where}: unknown kind {kind!r}")
    suite = doc.get("suite", "all")
    if suite not in SUITES:
        _fail(f"{where}: unknown suite {suite!r}")
    try:
        ring = ring_from_descriptor(_need(doc, "ring", where))
    except (ValueError, KeyError, TypeError) as exc:
        _fail(f"{where}: bad ring descriptor ({exc})")
    modules = _need(doc, "modules", where)
    if not isinstance(modules, dict) or not modules:
        _fail(f"{where}: 'modules' must map names to label lists")
    for mname, labels in modules.items():
        if (not isinstance(labels, list) or not labels
                or len(set(labels)) != len(labels)):
            _fail(f"{where}: module {mname!r} needs distinct labels")

    blocks = {}
    hopf_block = _need(doc, "hopf", where)
    blocks["hopf"] = _validate_hopf_block(ring, modules, hopf_block, where)

    if kind == "crossed" or "algebra" in doc:
        if "algebra" not in doc:
            _fail(f"{where}: kind 'crossed' needs an 'algebra' block")
        blocks["algebra"] = _validate_algebra_block(ring, modules,
                                                    doc["algebra"], where)
    if kind == "crossed":
        rH = len(modules[blocks["hopf"]["carrier"]])
        rA = len(modules[blocks["algebra"]["carrier"]])
        if "action" not in doc:
            _fail(f"{where}: missing action (kind 'crossed')")
        blocks["action"] = _parse_quads(ring, doc["action"], (rH, rA, rA),
                                        f"{where}: action")
        if "cocycle" not in doc:
            _fail(f"{where}: missing cocycle (kind 'crossed'; use the trivial "
                  "cocycle explicitly)")
        blocks["cocycle"] = _parse_quads(ring, doc["cocycle"], (rH, rH, rA),
                                         f"{where}: cocycle")
        if doc.get("cocycle_inverse") is not None:
            blocks["cocycle_inverse"] = _parse_quads(
                ring, doc["cocycle_inverse"], (rH, rH, rA),
                f"{where}: cocycle_inverse")
    if kind == "cleft":
        if "comodule" not in doc or "integral" not in doc:
            _fail(f"{where}: kind 'cleft' needs 'comodule' and 'integral'")
        blocks["comodule"] = _validate_comodule_block(
            ring, modules, doc["comodule"], blocks["hopf"], where)
        rH = len(modules[blocks["hopf"]["carrier"]])
        rB = len(modules[blocks["comodule"]["carrier"]])
        integral = doc["integral"]
        theta = _parse_matrix(ring, _need(integral, "theta", where), rB, rH,
                              f"{where}: theta")
        blocks["integral"] = {"theta": theta}
        if integral.get("theta_inv") is not None:
            blocks["integral"]["theta_inv"] = _parse_matrix(
                ring, integral["theta_inv"], rB, rH, f"{where}: theta_inv")

    rH = len(modules[blocks["hopf"]["carrier"]])
    for key in ("U", "V"):
        if doc.get(key) is not None:
            blocks[key] = [_parse_vector(ring, v, rH, f"{where}: {key}")
                           for v in doc[key]]

    # suite feasibility
    if suite in ("crossed", "opposite") and kind == "hopf":
        _fail(f"{where}: suite {suite!r} needs crossed or cleft data")
    if suite == "cleft" and kind == "hopf":
        _fail(f"{where}: suite 'cleft' needs crossed or cleft data")

    return InstanceFile(name, doc.get("description", ""), kind, ring, suite,
                        {k: list(v) for k, v in modules.items()}, blocks,
                        doc.get("expected", {}))


def _validate_hopf_block(ring, modules, block, where):
    carrier = _need(block, "carrier", f"{where}: hopf")
    if carrier not in modules:
        _fail(f"{where}: hopf carrier {carrier!r} not among modules")
    r = len(modules[carrier])
    out = {"carrier": carrier}
    out["mult"] = _parse_quads(ring, _need(block, "mult", where), (r, r, r),
                               f"{where}: hopf.mult")
    out["unit"] = _parse_vector(ring, _need(block, "unit", where), r,
                                f"{where}: hopf.unit")
    out["comult"] = _parse_quads(ring, _need(block, "comult", where), (r, r, r),
                                 f"{where}: hopf.comult")
    out["counit"] = _parse_vector(ring, _need(block, "counit", where), r,
                                  f"{where}: hopf.counit")
    for key in ("antipode", "twisted_antipode"):
        if block.get(key) is not None:
            out[key] = _parse_matrix(ring, block[key], r, r,
                                     f"{where}: hopf.{key}")
    return out


def _validate_algebra_block(ring, modules, block, where):
    carrier = _need(block, "carrier", f"{where}: algebra")
    if carrier not in modules:
        _fail(f"{where}: algebra carrier {carrier!r} not among modules")
    r = len(modules[carrier])
    return {
        "carrier": carrier,
        "mult": _parse_quads(ring, _need(block, "mult", where), (r, r, r),
                             f"{where}: algebra.mult"),
        "unit": _parse_vector(ring, _need(block, "unit", where), r,
                              f"{where}: algebra.unit"),
    }


def _validate_comodule_block(ring, modules, block, hopf_block, where):
    carrier = _need(block, "carrier", f"{where}: comodule")
    if carrier not in modules:
        _fail(f"{where}: comodule carrier {carrier!r} not among modules")
    rB = len(modules[carrier])
    rH = len(modules[hopf_block["carrier"]])
    return {
        "carrier": carrier,
        "mult": _parse_quads(ring, _need(block, "mult", where), (rB, rB, rB),
                             f"{where}: comodule.mult"),
        "unit": _parse_vector(ring, _need(block, "unit", where), rB,
                              f"{where}: comodule.unit"),
        "coaction": _parse_quads(ring, _need(block, "coaction", where),
                                 (rB, rB, rH), f"{where}: comodule.coaction"),
    }


# ---------------------------------------------------------------------------
# building payloads


def _hopf_from_block(ring, modules, block) -> HopfData:
    """Structural construction only: supplied (twisted) antipodes are used
    as-is and cross-checked by the hopf suite, so a wrong override surfaces
    as a check failure with a witness rather than a parse error."""
    carrier = free_module(ring, modules[block["carrier"]])
    alg = algebra_from_quadruples(carrier, block["mult"], block["unit"])
    coalg = coalgebra_from_quadruples(carrier, block["comult"], block["counit"])
    bial = BialgebraData(alg, coalg)
    if "antipode" in block:
        antipode = LinearMap(carrier, carrier, block["antipode"])
    else:
        antipode = compute_antipode(bial)
    if "twisted_antipode" in block:
        twisted = LinearMap(carrier, carrier, block["twisted_antipode"])
    else:
        twisted = compute_twisted_antipode(bial)
    return HopfData(bial, antipode, twisted)


def _quads_to_map(ring, quads, dom_ranks, cod_module):
    rows = [[ring.zero] * (dom_ranks[0] * dom_ranks[1])
            for _ in range(cod_module.rank)]
    for i, j, k, c in quads:
        rows[k][i * dom_ranks[1] + j] = ring.add(rows[k][i * dom_ranks[1] + j], c)
    return rows


def _build_payload(inst: InstanceFile):
    ring = inst.ring
    hopf = _hopf_from_block(ring, inst.modules, inst.blocks["hopf"])
    if inst.kind == "hopf":
        return hopf
    if inst.kind == "crossed":
        ab = inst.blocks["algebra"]
        a_carrier = free_module(ring, inst.modules[ab["carrier"]])
        algebra = algebra_from_quadruples(a_carrier, ab["mult"], ab["unit"])
        algebra.validate().require()
        rH, rA = hopf.rank, algebra.rank
        act_rows = _quads_to_map(ring, inst.blocks["action"], (rH, rA), a_carrier)
        action = WeakActionData(hopf, algebra, LinearMap(
            tensor_module(hopf.carrier, a_carrier), a_carrier, act_rows))
        from .actions import validate_weak_action

        validate_weak_action(action).require()
        sig_rows = _quads_to_map(ring, inst.blocks["cocycle"], (rH, rH), a_carrier)
        sigma = LinearMap(tensor_module(hopf.carrier, hopf.carrier), a_carrier,
                          sig_rows)
        claimed = None
        if "cocycle_inverse" in inst.blocks:
            inv_rows = _quads_to_map(ring, inst.blocks["cocycle_inverse"],
                                     (rH, rH), a_carrier)
            claimed = LinearMap(tensor_module(hopf.carrier, hopf.carrier),
                                a_carrier, inv_rows)
        cocycle = validate_cocycle(action, sigma, claimed_inverse=claimed)
        return build_crossed_product(action, cocycle)
    # cleft
    cb = inst.blocks["comodule"]
    b_carrier = free_module(ring, inst.modules[cb["carrier"]])
    b_alg = algebra_from_quadruples(b_carrier, cb["mult"], cb["unit"])
    b_alg.validate().require()
    rB, rH = b_alg.rank, hopf.rank
    coact_rows = [[ring.zero] * rB for _ in range(rB * rH)]
    for i, j, k, c in cb["coaction"]:
        coact_rows[j * rH + k][i] = ring.add(coact_rows[j * rH + k][i], c)
    comodule = ComoduleAlgebraData(hopf, b_alg, LinearMap(
        b_carrier, tensor_module(b_carrier, hopf.carrier), coact_rows))
    comodule.validate().require()
    theta = LinearMap(hopf.carrier, b_carrier, inst.blocks["integral"]["theta"])
    if "theta_inv" in inst.blocks["integral"]:
        theta_inv = LinearMap(hopf.carrier, b_carrier,
                              inst.blocks["integral"]["theta_inv"])
        from .hopf import ConvolutionAlgebra, convolution_invert
        from .linalg import vec_to_map

        conv = ConvolutionAlgebra(hopf.coalgebra, b_alg)
        flat = tuple(x for row in theta.matrix for x in row)
        recomputed = vec_to_map(convolution_invert(conv, flat), hopf.carrier,
                                b_carrier)
        if recomputed != theta_inv:
            _fail("supplied theta_inv disagrees with the convolution inverse")
    else:
        from .hopf import ConvolutionAlgebra, convolution_invert
        from .linalg import vec_to_map

        conv = ConvolutionAlgebra(hopf.coalgebra, b_alg)
        flat = tuple(x for row in theta.matrix for x in row)
        theta_inv = vec_to_map(convolution_invert(conv, flat), hopf.carrier,
                               b_carrier)
    cleft = CleftData(comodule, theta, theta_inv)
    cleft.validate().require()
    return cleft


# ---------------------------------------------------------------------------
# export


def _show_matrix(ring, m: LinearMap):
    return [[ring.show(x) for x in row] for row in m.matrix]


def _map_to_quads(ring, m: LinearMap, split: int):
    """Dense bilinear map back to sparse quadruples, deterministic order."""
    out = []
    for col in range(m.domain.rank):
        i, j = divmod(col, split)
        vec = m.column(col)
        for k, c in enumerate(vec):
            if c:
                out.append([i, j, k, ring.show(c)])
    return out


def _coaction_to_quads(ring, m: LinearMap, rH: int):
    out = []
    for i in range(m.domain.rank):
        for pos, c in enumerate(m.column(i)):
            if c:
                j, k = divmod(pos, rH)
                out.append([i, j, k, ring.show(c)])
    return out


def export_entry(entry: CatalogEntry, suite: str = "all") -> dict:
    """Serialize an entry to the instance document format."""
    ring = entry.ring
    payload = entry.payload
    from .hopf import ensure_hopf

    hopf = entry.hopf_data()
    doc = {
        "name": entry.name,
        "description": entry.description,
        "kind": entry.kind,
        "suite": suite,
        "ring": ring.describe(),
        "expected": dict(entry.expected),
    }
    modules = {"H": list(hopf.carrier.labels)}
    doc["hopf"] = {
        "carrier": "H",
        "mult": _map_to_quads(ring, hopf.algebra.mult, hopf.rank),
        "unit": [ring.show(x) for x in hopf.algebra.unit],
        "comult": _coaction_to_quads(ring, hopf.coalgebra.comult, hopf.rank),
        "counit": [ring.show(x) for x in hopf.coalgebra.counit.matrix[0]],
        "antipode": _show_matrix(ring, hopf.antipode),
        "twisted_antipode": _show_matrix(ring, hopf.twisted_antipode),
    }
    if entry.kind == "crossed":
        A = payload.action.algebra
        modules["A"] = list(A.carrier.labels)
        doc["algebra"] = {
            "carrier": "A",
            "mult": _map_to_quads(ring, A.mult, A.rank),
            "unit": [ring.show(x) for x in A.unit],
        }
        doc["action"] = _map_to_quads(ring, payload.action.action, A.rank)
        doc["cocycle"] = _map_to_quads(ring, payload.cocycle.sigma, hopf.rank)
        doc["cocycle_inverse"] = _map_to_quads(ring, payload.cocycle.sigma_inv,
                                               hopf.rank)
    elif entry.kind == "cleft":
        B = payload.comodule_algebra.algebra
        modules["B"] = list(B.carrier.labels)
        doc["comodule"] = {
            "carrier": "B",
            "mult": _map_to_quads(ring, B.mult, B.rank),
            "unit": [ring.show(x) for x in B.unit],
            "coaction": _coaction_to_quads(
                ring, payload.comodule_algebra.coaction, hopf.rank),
        }
        doc["integral"] = {
            "theta": _show_matrix(ring, payload.theta),
            "theta_inv": _show_matrix(ring, payload.theta_inv),
        }
    for key, span in (("U", entry.u_span), ("V", entry.v_span)):
        if span is not None:
            doc[key] = [[ring.show(ring.of(x)) for x in v] for v in span]
    doc["modules"] = modules
    return doc


def export_entry_json(entry: CatalogEntry, suite: str = "all") -> str:
    return json.dumps(export_entry(entry, suite), indent=2, sort_keys=True,
                      ensure_ascii=False) + "\n"


def entries_equal(a: CatalogEntry, b: CatalogEntry) -> bool:
    """Equality through canonical serialization."""
    return export_entry(a) == export_entry(b)
