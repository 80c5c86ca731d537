"""Session files: a YAML document declaring algebras, modules and torsor data.

Grammar (every scalar is read from its source text, so write rationals as
``"1/2"``; integers may be bare)::

    format: torsorlab-session/1
    scalars: Q | F<p>                      # e.g. F7
    description: free text                 # optional
    algebras:
      NAME: {dim: n, mult: [[vec, ...], ...], unit: vec}   # mult[i][j] = e_i e_j
    hopf:
      NAME: {algebra: ALG, coproduct: MAT, counit: MAT, antipode: MAT}
    morphisms:
      NAME: {source: ALG, target: ALG, matrix: MAT}
    modules:                               # right modules
      NAME: {algebra: ALG, dim: n, action: [MAT, ...]}
    bimodules:
      NAME: {left: ALG, right: ALG, dim: n, left_action: [MAT, ...], right_action: [MAT, ...]}
    corings:
      NAME: {algebra: ALG, carrier: BIMOD, coproduct: MAT, counit: MAT}
    entwinings:
      NAME: {alpha: MOR, coring: CORING, psi: MAT}        # field-level C ⊗ T → T ⊗ C
    torsors:
      NAME: {alpha: MOR, sigma: BIMOD, tau: MAT}          # field-level Σ → Σ ⊗ Σ* ⊗ Σ
    galois:
      NAME: {entwining: ENT, sigma: BIMOD, coaction: MAT}  # field-level Σ → Σ ⊗ C
    probes: [MODULE, ...]                  # extra probe objects

``k`` always names the ground field viewed as a one-dimensional algebra.
A matrix ``MAT`` is a list of rows, or ``{shape: [r, c], entries: [[i, j, v], ...]}``.
Coordinates on Σ* are those of the canonical dual basis of Hom_T(Σ, T), i.e.
the reduced echelon basis of the solution space of the linearity equations.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field as dc_field

import yaml
from yaml.nodes import MappingNode, Node, ScalarNode, SequenceNode

from .algebra import (AlgebraMorphism, Bimodule, FDAlgebra, HopfStructure, RightModule,
                      ground_algebra)
from .comonads import CoringData
from .entwining import EntwiningData, GaloisDatum
from .errors import ParseError, TorsorLabError
from .linalg import GF, QQ, Field, Matrix
from .monoidal import balanced_tensor

__all__ = ["Session", "parse_session", "load_session", "dump_session", "builtin_session",
           "FORMAT_TAG"]

FORMAT_TAG = "torsorlab-session/1"
_SECTIONS = ("algebras", "hopf", "morphisms", "modules", "bimodules", "corings",
             "entwinings", "torsors", "galois")
_TOP_KEYS = {"format", "scalars", "description", "probes", *_SECTIONS}


def _fail(node: Node | None, message: str):
    if node is None:
        raise ParseError(message)
    mark = node.start_mark
    raise ParseError(message, line=mark.line + 1, column=mark.column + 1)


def _mapping(node: Node, what: str) -> dict:
    if not isinstance(node, MappingNode):
        _fail(node, f"{what} must be a mapping")
    out = {}
    for k, v in node.value:
        if not isinstance(k, ScalarNode):
            _fail(k, f"keys of {what} must be plain names")
        if k.value in out:
            _fail(k, f"duplicate key {k.value!r} in {what}")
        out[k.value] = (k, v)
    return out


def _sequence(node: Node, what: str) -> list:
    if not isinstance(node, SequenceNode):
        _fail(node, f"{what} must be a list")
    return list(node.value)


def _text(node: Node, what: str) -> str:
    if not isinstance(node, ScalarNode):
        _fail(node, f"{what} must be a scalar")
    return node.value


def _int(node: Node, what: str) -> int:
    text = _text(node, what)
    if not re.fullmatch(r"[0-9]+", text.strip()):
        _fail(node, f"{what} must be a non-negative integer, got {text!r}")
    return int(text)


def _scalar(field: Field, node: Node, what: str):
    text = _text(node, what)
    if not re.fullmatch(r"\s*[+-]?[0-9]+(\s*/\s*[+-]?[0-9]+)?\s*", text):
        _fail(node, f"{what}: {text!r} is not an exact integer or fraction")
    try:
        return field.parse(text.replace(" ", ""))
    except (ValueError, ZeroDivisionError, TorsorLabError) as exc:
        _fail(node, f"{what}: {exc}")


def _require(fields: dict, key: str, owner: Node, what: str) -> Node:
    if key not in fields:
        _fail(owner, f"{what} is missing the key {key!r}")
    return fields[key][1]


def _no_extra(fields: dict, allowed, what: str):
    for key, (knode, _) in fields.items():
        if key not in allowed:
            _fail(knode, f"unknown key {key!r} in {what}")


def _vector(field: Field, node: Node, length: int | None, what: str) -> list:
    items = _sequence(node, what)
    if length is not None and len(items) != length:
        _fail(node, f"{what} has length {len(items)}, expected {length}")
    return [_scalar(field, x, what) for x in items]


def _matrix(field: Field, node: Node, shape: tuple | None, what: str) -> Matrix:
    if isinstance(node, MappingNode):
        fields = _mapping(node, what)
        _no_extra(fields, {"shape", "entries"}, what)
        dims = _sequence(_require(fields, "shape", node, what), f"{what} shape")
        if len(dims) != 2:
            _fail(node, f"{what} shape must be [rows, cols]")
        r, c = (_int(d, f"{what} shape") for d in dims)
        entries = {}
        for ent in _sequence(_require(fields, "entries", node, what), f"{what} entries"):
            parts = _sequence(ent, f"{what} entry")
            if len(parts) != 3:
                _fail(ent, f"{what} entry must be [row, col, value]")
            i, j = _int(parts[0], f"{what} row"), _int(parts[1], f"{what} col")
            if i >= r or j >= c:
                _fail(ent, f"{what} entry ({i}, {j}) outside shape {r}x{c}")
            entries[(i, j)] = _scalar(field, parts[2], what)
        m = Matrix.from_dict(field, r, c, entries)
    else:
        rows = _sequence(node, what)
        width = None
        vals = []
        for row in rows:
            vec = _vector(field, row, width, f"{what} row")
            width = len(vec) if width is None else width
            vals.append(vec)
        if not vals:
            if shape is None or shape[0] != 0:
                _fail(node, f"{what}: an empty list needs the explicit shape form")
            return Matrix.zeros(field, 0, shape[1])
        m = Matrix.from_rows(field, vals, width)
    if shape is not None and m.shape != tuple(shape):
        _fail(node, f"{what} has shape {m.shape[0]}x{m.shape[1]}, "
                    f"expected {shape[0]}x{shape[1]}")
    return m


def _parse_field(node: Node) -> Field:
    text = _text(node, "scalars").strip()
    if text == "Q":
        return QQ
    m = re.fullmatch(r"F(\d+)", text)
    if m:
        try:
            return GF(int(m.group(1)))
        except TorsorLabError as exc:
            _fail(node, f"scalars: {exc}")
        except ValueError as exc:
            _fail(node, f"scalars: {exc}")
    _fail(node, f"scalars must be 'Q' or 'F<p>' for a prime p, got {text!r}")


@dataclass
class Session:
    """Parsed declarations; torsors and Galois data are assembled on demand."""

    field: Field
    description: str = ""
    source: str = "<session>"
    algebras: dict = dc_field(default_factory=dict)
    hopf: dict = dc_field(default_factory=dict)
    morphisms: dict = dc_field(default_factory=dict)
    modules: dict = dc_field(default_factory=dict)
    bimodules: dict = dc_field(default_factory=dict)
    corings: dict = dc_field(default_factory=dict)
    entwinings: dict = dc_field(default_factory=dict)
    torsor_specs: dict = dc_field(default_factory=dict)    # name -> (alpha, sigma, tau, node)
    galois_specs: dict = dc_field(default_factory=dict)    # name -> (entwining, sigma, rho, node)
    probes: list = dc_field(default_factory=list)
    _torsors: dict = dc_field(default_factory=dict, repr=False)
    _galois: dict = dc_field(default_factory=dict, repr=False)

    @property
    def ground(self) -> FDAlgebra:
        return ground_algebra(self.field)

    def algebra(self, name: str) -> FDAlgebra:
        return self.ground if name == "k" else self.algebras[name]

    def algebra_name(self, alg: FDAlgebra) -> str:
        if alg is self.ground:
            return "k"
        for name, a in self.algebras.items():
            if a is alg:
                return name
        raise KeyError(alg.name)

    def add_probes(self, modules) -> None:
        """Register extra probe modules; must precede torsor assembly."""
        if self._torsors or self._galois:
            raise RuntimeError("probes must be added before torsors are assembled")
        self.probes.extend(modules)

    def _extra_probes(self, a, b, t) -> dict:
        return {key: [m for m in self.probes if m.algebra is alg]
                for key, alg in (("A", a), ("B", b), ("T", t))}

    def torsor(self, name: str):
        from .herd import HerdSetting, PreTorsor
        if name not in self._torsors:
            alpha, sigma, tau, node = self.torsor_specs[name]
            try:
                st = HerdSetting(alpha, sigma, name=name,
                                 extra_probes=self._extra_probes(alpha.source, sigma.left_algebra,
                                                                 alpha.target))
            except TorsorLabError as exc:
                _fail(node, f"torsor {name}: {exc}")
            want = (st.herd_sec.nrows, sigma.dim)
            if tau.shape != want:
                _fail(node, f"torsor {name}: tau has shape {tau.shape[0]}x{tau.shape[1]}, "
                            f"expected {want[0]}x{want[1]}")
            self._torsors[name] = PreTorsor.from_field_tau(st, tau, name=name)
        return self._torsors[name]

    def galois_datum(self, name: str) -> GaloisDatum:
        if name not in self._galois:
            ent, sigma, rho, node = self.galois_specs[name]
            bt = balanced_tensor(_restrict(ent, sigma), ent.coring.carrier)
            if rho.shape != (bt.field_dim, sigma.dim):
                _fail(node, f"galois {name}: coaction has shape {rho.shape[0]}x{rho.shape[1]}, "
                            f"expected {bt.field_dim}x{sigma.dim}")
            try:
                g = GaloisDatum(ent, sigma, bt.project(rho), name=name)
                g.setting(extra_probes=self._extra_probes(ent.A, sigma.left_algebra, ent.T))
            except TorsorLabError as exc:
                _fail(node, f"galois {name}: {exc}")
            self._galois[name] = g
        return self._galois[name]


def _restrict(ent: EntwiningData, sigma: Bimodule) -> RightModule:
    from .algebra import restriction_of_scalars
    return restriction_of_scalars(ent.alpha, sigma.as_right_module())


class _Loader:
    def __init__(self, root: Node, source: str, base: Session | None):
        self.root = root
        self.base = base
        top = _mapping(root, "the session")
        self.top = top
        if base is not None:
            field = base.field
            if "scalars" in top and _parse_field(top["scalars"][1]) != field:
                _fail(top["scalars"][1], "probe file scalars differ from the session")
        else:
            field = _parse_field(_require(top, "scalars", root, "the session"))
        self.s = Session(field, source=source)
        if base is not None:
            # share algebras so probe modules live over the same objects
            self.s.algebras = dict(base.algebras)
        self.f = field

    def _ref(self, table: dict, node: Node, kind: str):
        name = _text(node, kind)
        if name not in table:
            _fail(node, f"unknown {kind} {name!r}")
        return table[name]

    def _alg(self, node: Node) -> FDAlgebra:
        name = _text(node, "algebra name")
        if name == "k":
            return self.s.ground
        return self._ref(self.s.algebras, node, "algebra")

    def load(self) -> Session:
        top, s = self.top, self.s
        for key, (knode, _) in top.items():
            if key not in _TOP_KEYS:
                _fail(knode, f"unknown top-level key {key!r}")
        if "format" in top:
            tag = _text(top["format"][1], "format")
            if tag != FORMAT_TAG:
                _fail(top["format"][1], f"unsupported format {tag!r}; expected {FORMAT_TAG!r}")
        if "description" in top:
            s.description = _text(top["description"][1], "description")
        for section in _SECTIONS:
            if section not in top:
                continue
            snode = top[section][1]
            if self.base is not None and section != "modules":
                _fail(top[section][0], "a probe file may only declare modules")
            if isinstance(snode, ScalarNode) and snode.value in ("", "~", "null"):
                continue
            for name, (knode, body) in _mapping(snode, section).items():
                if not re.fullmatch(r"[A-Za-z_][A-Za-z0-9_.\-^]*", name):
                    _fail(knode, f"bad name {name!r}")
                getattr(self, f"_load_{section}")(name, knode, body)
        if "probes" in top:
            pnode = top["probes"][1]
            for item in _sequence(pnode, "probes"):
                s.probes.append(self._ref(s.modules, item, "module"))
        return s

    def _load_algebras(self, name, knode, body):
        if name == "k":
            _fail(knode, "'k' is reserved for the ground field")
        if self.base is not None and name in self.s.algebras:
            _fail(knode, f"algebra {name!r} is already declared by the session")
        f = self.f
        fields = _mapping(body, f"algebra {name}")
        _no_extra(fields, {"dim", "mult", "unit"}, f"algebra {name}")
        dim = _int(_require(fields, "dim", body, f"algebra {name}"), "dim")
        if dim == 0:
            _fail(fields["dim"][1], "an algebra needs dimension at least 1")
        mnode = _require(fields, "mult", body, f"algebra {name}")
        rows = _sequence(mnode, "mult")
        if len(rows) != dim:
            _fail(mnode, f"mult has {len(rows)} rows, expected {dim}")
        mult = []
        for i, row in enumerate(rows):
            entries = _sequence(row, "mult row")
            if len(entries) != dim:
                _fail(row, f"mult row {i} has {len(entries)} entries, expected {dim}")
            mult.append([_vector(f, v, dim, f"product e{i} e{j}") for j, v in enumerate(entries)])
        unit = _vector(f, _require(fields, "unit", body, f"algebra {name}"), dim, "unit vector")
        self.s.algebras[name] = FDAlgebra(f, dim, mult, unit, name=name)

    def _load_hopf(self, name, knode, body):
        fields = _mapping(body, f"hopf {name}")
        _no_extra(fields, {"algebra", "coproduct", "counit", "antipode"}, f"hopf {name}")
        alg = self._alg(_require(fields, "algebra", body, f"hopf {name}"))
        n = alg.dim
        f = self.f
        cop = _matrix(f, _require(fields, "coproduct", body, "hopf"), (n * n, n), "coproduct")
        eps = _matrix(f, _require(fields, "counit", body, "hopf"), (1, n), "counit")
        s = _matrix(f, _require(fields, "antipode", body, "hopf"), (n, n), "antipode")
        self.s.hopf[name] = HopfStructure(alg, cop, eps, s)

    def _load_morphisms(self, name, knode, body):
        fields = _mapping(body, f"morphism {name}")
        _no_extra(fields, {"source", "target", "matrix"}, f"morphism {name}")
        src = self._alg(_require(fields, "source", body, f"morphism {name}"))
        tgt = self._alg(_require(fields, "target", body, f"morphism {name}"))
        mat = _matrix(self.f, _require(fields, "matrix", body, f"morphism {name}"),
                      (tgt.dim, src.dim), f"morphism {name} matrix")
        self.s.morphisms[name] = AlgebraMorphism(src, tgt, mat)

    def _actions(self, node, alg, dim, what):
        items = _sequence(node, what)
        if len(items) != alg.dim:
            _fail(node, f"{what} lists {len(items)} matrices, expected {alg.dim}")
        return [_matrix(self.f, m, (dim, dim), f"{what} matrix") for m in items]

    def _load_modules(self, name, knode, body):
        if name in self.s.modules or (self.base is not None and name in self.base.modules):
            _fail(knode, f"module {name!r} declared twice")
        fields = _mapping(body, f"module {name}")
        _no_extra(fields, {"algebra", "dim", "action"}, f"module {name}")
        alg = self._alg(_require(fields, "algebra", body, f"module {name}"))
        dim = _int(_require(fields, "dim", body, f"module {name}"), "dim")
        acts = self._actions(_require(fields, "action", body, f"module {name}"), alg, dim,
                             "action")
        self.s.modules[name] = RightModule(alg, dim, acts, name=name)

    def _load_bimodules(self, name, knode, body):
        fields = _mapping(body, f"bimodule {name}")
        _no_extra(fields, {"left", "right", "dim", "left_action", "right_action"},
                  f"bimodule {name}")
        left = self._alg(_require(fields, "left", body, f"bimodule {name}"))
        right = self._alg(_require(fields, "right", body, f"bimodule {name}"))
        dim = _int(_require(fields, "dim", body, f"bimodule {name}"), "dim")
        la = self._actions(_require(fields, "left_action", body, "bimodule"), left, dim,
                           "left_action")
        ra = self._actions(_require(fields, "right_action", body, "bimodule"), right, dim,
                           "right_action")
        self.s.bimodules[name] = Bimodule(left, right, dim, la, ra, name=name)

    def _load_corings(self, name, knode, body):
        fields = _mapping(body, f"coring {name}")
        _no_extra(fields, {"algebra", "carrier", "coproduct", "counit"}, f"coring {name}")
        alg = self._alg(_require(fields, "algebra", body, f"coring {name}"))
        cnode = _require(fields, "carrier", body, f"coring {name}")
        carrier = self._ref(self.s.bimodules, cnode, "bimodule")
        if carrier.left_algebra is not alg or carrier.algebra is not alg:
            _fail(cnode, f"coring {name}: carrier must be a bimodule over {alg.name}")
        sq = balanced_tensor(carrier, carrier)
        cop = _matrix(self.f, _require(fields, "coproduct", body, "coring"),
                      (sq.field_dim, carrier.dim), "coring coproduct")
        eps = _matrix(self.f, _require(fields, "counit", body, "coring"),
                      (alg.dim, carrier.dim), "coring counit")
        self.s.corings[name] = CoringData(alg, carrier, sq.project(cop), eps, name=name)

    def _load_entwinings(self, name, knode, body):
        fields = _mapping(body, f"entwining {name}")
        _no_extra(fields, {"alpha", "coring", "psi"}, f"entwining {name}")
        alpha = self._ref(self.s.morphisms, _require(fields, "alpha", body, "entwining"),
                          "morphism")
        cnode = _require(fields, "coring", body, "entwining")
        coring = self._ref(self.s.corings, cnode, "coring")
        if coring.algebra is not alpha.source:
            _fail(cnode, f"entwining {name}: coring is not over the source of alpha")
        d = coring.carrier.dim * alpha.target.dim
        psi = _matrix(self.f, _require(fields, "psi", body, "entwining"), (d, d), "psi")
        self.s.entwinings[name] = EntwiningData.from_field_psi(alpha, coring, psi, name=name)

    def _load_torsors(self, name, knode, body):
        fields = _mapping(body, f"torsor {name}")
        _no_extra(fields, {"alpha", "sigma", "tau"}, f"torsor {name}")
        alpha = self._ref(self.s.morphisms, _require(fields, "alpha", body, "torsor"), "morphism")
        snode = _require(fields, "sigma", body, "torsor")
        sigma = self._ref(self.s.bimodules, snode, "bimodule")
        if sigma.algebra is not alpha.target:
            _fail(snode, f"torsor {name}: Sigma must be a right module over the target of alpha")
        tau = _matrix(self.f, _require(fields, "tau", body, "torsor"), None, "tau")
        self.s.torsor_specs[name] = (alpha, sigma, tau, body)

    def _load_galois(self, name, knode, body):
        fields = _mapping(body, f"galois {name}")
        _no_extra(fields, {"entwining", "sigma", "coaction"}, f"galois {name}")
        ent = self._ref(self.s.entwinings, _require(fields, "entwining", body, "galois"),
                        "entwining")
        snode = _require(fields, "sigma", body, "galois")
        sigma = self._ref(self.s.bimodules, snode, "bimodule")
        if sigma.algebra is not ent.T:
            _fail(snode, f"galois {name}: Sigma must be a right module over the entwined algebra")
        rho = _matrix(self.f, _require(fields, "coaction", body, "galois"), None, "coaction")
        self.s.galois_specs[name] = (ent, sigma, rho, body)


def parse_session(text: str, source: str = "<session>", base: Session | None = None) -> Session:
    """Parse session text.  With ``base``, only modules (probe files) may refer back to it."""
    try:
        root = yaml.compose(text, Loader=yaml.SafeLoader)
    except yaml.MarkedYAMLError as exc:
        mark = exc.problem_mark or exc.context_mark
        line = mark.line + 1 if mark else None
        col = mark.column + 1 if mark else None
        raise ParseError(f"{source}: {exc.problem or exc.context}", line=line, column=col) \
            from None
    except yaml.YAMLError as exc:
        raise ParseError(f"{source}: {exc}") from None
    if root is None:
        raise ParseError(f"{source}: empty session", line=1, column=1)
    try:
        return _Loader(root, source, base).load()
    except ParseError:
        raise
    except TorsorLabError as exc:
        raise ParseError(f"{source}: {exc}") from None


def load_session(path: str, base: Session | None = None) -> Session:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from None
    return parse_session(text, source=path, base=base)


# ---------------------------------------------------------------- emission


def _fmt(field: Field, x) -> str:
    if field.p:
        return str(int(x) % field.p)
    return field.format(x)


def _mat(field: Field, m: Matrix):
    if m.nrows == 0 or m.ncols == 0 or m.nrows * m.ncols > 256:
        entries = [[i, j, _fmt(field, m[i, j])] for i in range(m.nrows)
                   for j, _ in sorted(m.row_items(i).items())]
        return {"shape": [m.nrows, m.ncols], "entries": entries}
    return [[_fmt(field, v) for v in row] for row in m.tolist()]


class _FlowList(list):
    pass


class _Dumper(yaml.SafeDumper):
    pass


def _flow(dumper, data):
    return dumper.represent_sequence("tag:yaml.org,2002:seq", data, flow_style=True)


_Dumper.add_representer(_FlowList, _flow)


def _leaves(obj):
    """Mark innermost lists for flow style."""
    if isinstance(obj, dict):
        return {k: _leaves(v) for k, v in obj.items()}
    if isinstance(obj, list):
        if all(not isinstance(v, (list, dict)) for v in obj):
            return _FlowList(obj)
        return [_leaves(v) for v in obj]
    return obj


def dump_session(s: Session) -> str:
    """Serialize a session; parsing the output gives back the same declarations."""
    f = s.field
    doc = {"format": FORMAT_TAG, "scalars": "Q" if not f.p else f"F{f.p}"}
    if s.description:
        doc["description"] = s.description
    an = s.algebra_name
    if s.algebras:
        doc["algebras"] = {
            name: {"dim": a.dim,
                   "mult": [[[_fmt(f, c) for c in vec] for vec in row] for row in a.mult],
                   "unit": [_fmt(f, c) for c in a.unit]}
            for name, a in s.algebras.items()}
    if s.hopf:
        doc["hopf"] = {name: {"algebra": an(h.algebra), "coproduct": _mat(f, h.coproduct),
                              "counit": _mat(f, h.counit), "antipode": _mat(f, h.antipode)}
                       for name, h in s.hopf.items()}
    if s.morphisms:
        doc["morphisms"] = {name: {"source": an(m.source), "target": an(m.target),
                                   "matrix": _mat(f, m.matrix)}
                            for name, m in s.morphisms.items()}
    if s.modules:
        doc["modules"] = {name: {"algebra": an(m.algebra), "dim": m.dim,
                                 "action": [_mat(f, a) for a in m.action]}
                          for name, m in s.modules.items()}
    if s.bimodules:
        doc["bimodules"] = {name: {"left": an(b.left_algebra), "right": an(b.algebra),
                                   "dim": b.dim,
                                   "left_action": [_mat(f, a) for a in b.left_action],
                                   "right_action": [_mat(f, a) for a in b.action]}
                            for name, b in s.bimodules.items()}

    def key_of(table, obj):
        return next(k for k, v in table.items() if v is obj)

    if s.corings:
        doc["corings"] = {name: {"algebra": an(c.algebra),
                                 "carrier": key_of(s.bimodules, c.carrier),
                                 "coproduct": _mat(f, c.field_coproduct()),
                                 "counit": _mat(f, c.counit)}
                          for name, c in s.corings.items()}
    if s.entwinings:
        doc["entwinings"] = {name: {"alpha": key_of(s.morphisms, e.alpha),
                                    "coring": key_of(s.corings, e.coring),
                                    "psi": _mat(f, e.field_psi)}
                             for name, e in s.entwinings.items()}
    if s.torsor_specs:
        doc["torsors"] = {name: {"alpha": key_of(s.morphisms, a),
                                 "sigma": key_of(s.bimodules, sg), "tau": _mat(f, t)}
                          for name, (a, sg, t, _) in s.torsor_specs.items()}
    if s.galois_specs:
        doc["galois"] = {name: {"entwining": key_of(s.entwinings, e),
                                "sigma": key_of(s.bimodules, sg), "coaction": _mat(f, r)}
                         for name, (e, sg, r, _) in s.galois_specs.items()}
    if s.probes:
        doc["probes"] = [key_of(s.modules, m) for m in s.probes]
    return yaml.dump(_leaves(doc), Dumper=_Dumper, sort_keys=False, allow_unicode=True,
                     width=100)


def builtin_session(name: str) -> Session:
    """The builtin example as a session: Hopf data, torsor, entwining and Galois datum."""
    from .entwining import hopf_entwining
    from .examples import BUILTIN, builtin
    pt = builtin(name)
    st = pt.setting
    hopf = st.hopf
    f = st.field
    s = Session(f, description=BUILTIN[name][0], source=f"builtin:{name}")
    t = st.T
    if t is not s.ground:
        s.algebras[t.name] = t
    tname = s.algebra_name(t)
    s.hopf[tname] = hopf
    s.morphisms["unit"] = st.alpha
    s.bimodules["Sigma"] = st.sigma
    ent = hopf_entwining(hopf, name="psi")
    ent.coring.name = ent.coring.carrier.name = "C"
    ent = EntwiningData.from_field_psi(st.alpha, ent.coring, ent.field_psi, name="psi")
    s.bimodules["C"] = ent.coring.carrier
    s.corings["C"] = ent.coring
    s.entwinings["psi"] = ent
    s.torsor_specs[name] = (st.alpha, st.sigma, st.herd_sec @ pt.tau, None)
    s._torsors[name] = pt
    # Σ = T coacts on itself through the coproduct
    s.galois_specs["G"] = (ent, st.sigma, hopf.coproduct, None)
    return s
