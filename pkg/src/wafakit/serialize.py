"""JSON document formats.

Every document carries a top-level ``kind`` discriminator: ``wafa``,
``wfta``, ``pa``, ``hom``, ``step``, or ``nivat``.  Scalar values are
strings ("0"/"1", decimals, "p/q"); values of a polynomial carrier are
monomial lists.  Polynomials are arrays of ``{"coeff": ..., "exps":
{"i": k}}`` objects, the empty array being zero; term nodes are
``{"sym": ..., "children": [...]}`` and variables ``{"var": i}``;
positions serialize as dot-joined child indices.
"""

from __future__ import annotations

import json
from typing import Any, Mapping, Sequence

from .errors import ParseError
from .polynomial import Polynomial
from .semiring import (
    BOOLEAN,
    NATURAL,
    POLYNOMIAL_TAG,
    RATIONAL,
    Semiring,
)
from .trees import RankedAlphabet, Term, TreeHom, WordHom, WordToTreeHom, node, var
from .wafa import Wafa
from .wfta import StepFunction, Wfta, build as build_wfta
from .poly_automata import Pa
from .transforms import NivatDecomposition


# -- rings ---------------------------------------------------------------


def encode_ring(ring: Semiring) -> dict:
    if ring.tag == POLYNOMIAL_TAG:
        return {
            "tag": ring.tag,
            "base": encode_ring(ring.base),
            "var_names": list(ring.var_names),
        }
    return {"tag": ring.tag}


def decode_ring(doc: Mapping) -> Semiring:
    tag = doc.get("tag")
    if tag == "boolean":
        return BOOLEAN
    if tag == "natural":
        return NATURAL
    if tag == "rational":
        return RATIONAL
    if tag == POLYNOMIAL_TAG:
        return Semiring.polynomials(decode_ring(doc["base"]), doc["var_names"])
    raise ParseError(f"unknown ring tag {tag!r}")


# -- values and polynomials -------------------------------------------------


def encode_value(ring: Semiring, v) -> Any:
    ring.require(v)
    if ring.tag == POLYNOMIAL_TAG:
        return encode_poly(v)
    return ring.format_value(v)


def decode_value(ring: Semiring, doc: Any):
    if ring.tag == POLYNOMIAL_TAG:
        if not isinstance(doc, list):
            raise ParseError("polynomial values are monomial lists")
        return decode_poly(ring.base, len(ring.var_names), doc)
    if not isinstance(doc, str):
        raise ParseError(f"expected a value string, got {doc!r}")
    return ring.parse_text(doc)


def encode_poly(p: Polynomial) -> list:
    return [
        {"coeff": encode_value(p.ring, m.coeff), "exps": {str(v): e for v, e in m.exps}}
        for m in p.monomials
    ]


def decode_poly(ring: Semiring, nvars: int, doc: Any) -> Polynomial:
    if not isinstance(doc, list):
        raise ParseError("a polynomial is an array of monomials")
    terms = []
    for m in doc:
        try:
            exps = {int(k): int(e) for k, e in m.get("exps", {}).items()}
            terms.append((decode_value(ring, m["coeff"]), exps))
        except (KeyError, TypeError, AttributeError, ValueError) as exc:
            raise ParseError(f"bad monomial {m!r}") from exc
    try:
        return Polynomial.from_terms(ring, nvars, terms)
    except ValueError as exc:
        raise ParseError(str(exc)) from exc


# -- terms and alphabets --------------------------------------------------------


def encode_term(t: Term) -> dict:
    if t.is_var:
        return {"var": t.var}
    return {"sym": t.sym, "children": [encode_term(c) for c in t.children]}


def decode_term(doc: Any) -> Term:
    if not isinstance(doc, Mapping):
        raise ParseError(f"bad term {doc!r}")
    if "var" in doc:
        try:
            return var(int(doc["var"]))
        except ValueError as exc:
            raise ParseError(str(exc)) from exc
    if "sym" not in doc:
        raise ParseError(f"term needs 'sym' or 'var': {doc!r}")
    kids = doc.get("children", [])
    return node(doc["sym"], *[decode_term(c) for c in kids])


def encode_alphabet(alphabet: RankedAlphabet) -> list:
    return [{"name": n, "rank": r} for n, r in alphabet.symbols]


def decode_alphabet(doc: Any) -> RankedAlphabet:
    try:
        return RankedAlphabet.make((d["name"], int(d["rank"])) for d in doc)
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"bad ranked alphabet: {exc}") from exc


def encode_position(pos: tuple[int, ...]) -> str:
    return ".".join(map(str, pos))


def decode_position(text: str) -> tuple[int, ...]:
    if text == "":
        return ()
    try:
        return tuple(int(x) for x in text.split("."))
    except ValueError as exc:
        raise ParseError(f"bad position {text!r}") from exc


def parse_word(letters: Sequence[str], text: str) -> tuple[str, ...]:
    """Words are letter-by-letter strings when all letters are single
    characters; otherwise whitespace- or comma-separated."""
    if text == "":
        return ()
    if any(sep in text for sep in (" ", ",")):
        parts = tuple(p for p in text.replace(",", " ").split() if p)
    elif all(len(a) == 1 for a in letters):
        parts = tuple(text)
    else:
        parts = (text,)
    for a in parts:
        if a not in letters:
            raise ParseError(f"letter {a!r} is not in the alphabet {list(letters)}")
    return parts


# -- automata ------------------------------------------------------------------


def encode_wafa(A: Wafa) -> dict:
    return {
        "kind": "wafa",
        "ring": encode_ring(A.ring),
        "states": list(A.states),
        "alphabet": list(A.alphabet),
        "P0": encode_poly(A.p0),
        "delta": {
            q: {a: encode_poly(A.delta[(q, a)]) for a in A.alphabet} for q in A.states
        },
        "tau": {q: encode_value(A.ring, A.tau[q]) for q in A.states},
    }


def decode_wafa(doc: Mapping) -> Wafa:
    ring = decode_ring(doc["ring"])
    states = tuple(doc["states"])
    alphabet = tuple(doc["alphabet"])
    n = len(states)
    delta = {}
    for q, row in doc.get("delta", {}).items():
        for a, p in row.items():
            delta[(q, a)] = decode_poly(ring, n, p)
    tau = {q: decode_value(ring, v) for q, v in doc.get("tau", {}).items()}
    return Wafa(ring, states, alphabet, delta, decode_poly(ring, n, doc["P0"]), tau)


def encode_wfta(B: Wfta) -> dict:
    rows = []
    for sym, _ in B.alphabet.symbols:
        for (frm, to), w in sorted(B.entries(sym).items()):
            rows.append(
                {"sym": sym, "from": list(frm), "to": to, "weight": encode_value(B.ring, w)}
            )
    return {
        "kind": "wfta",
        "ring": encode_ring(B.ring),
        "states": list(B.states),
        "alphabet": encode_alphabet(B.alphabet),
        "delta": rows,
        "lambda": {q: encode_value(B.ring, w) for q, w in sorted(B.lam.items())},
    }


def decode_wfta(doc: Mapping) -> Wfta:
    ring = decode_ring(doc["ring"])
    alphabet = decode_alphabet(doc["alphabet"])
    rows = [
        (d["sym"], tuple(d["from"]), d["to"], decode_value(ring, d["weight"]))
        for d in doc.get("delta", [])
    ]
    lam = {q: decode_value(ring, w) for q, w in doc.get("lambda", {}).items()}
    try:
        return build_wfta(ring, tuple(doc["states"]), alphabet, rows, lam)
    except Exception as exc:
        raise ParseError(f"bad tree automaton: {exc}") from exc


def encode_pa(A: Pa) -> dict:
    return {
        "kind": "pa",
        "ring": encode_ring(A.ring),
        "n": A.n,
        "alphabet": list(A.alphabet),
        "alpha": [encode_value(A.ring, v) for v in A.alpha],
        "p": {a: [encode_poly(p) for p in A.update(a)] for a in A.alphabet},
        "gamma": encode_poly(A.gamma),
    }


def decode_pa(doc: Mapping) -> Pa:
    ring = decode_ring(doc["ring"])
    n = int(doc["n"])
    alphabet = tuple(doc["alphabet"])
    alpha = tuple(decode_value(ring, v) for v in doc["alpha"])
    updates = {
        a: tuple(decode_poly(ring, n, p) for p in ps) for a, ps in doc["p"].items()
    }
    for a, ps in updates.items():
        if len(ps) != n:
            raise ParseError(f"update vector for {a!r} has {len(ps)} entries, expected {n}")
    return Pa(ring, n, alphabet, alpha, updates, decode_poly(ring, n, doc["gamma"]))


# -- homomorphisms -----------------------------------------------------------------


def encode_word_hom(h: WordHom) -> dict:
    return {
        "kind": "hom",
        "variant": "word",
        "source": list(h.source),
        "target": list(h.target),
        "images": {a: "".join(h.image(a)) if all(len(x) == 1 for x in h.image(a)) else list(h.image(a)) for a in h.source},
    }


def encode_tree_hom(h: TreeHom) -> dict:
    return {
        "kind": "hom",
        "variant": "tree",
        "source": encode_alphabet(h.source),
        "target": encode_alphabet(h.target),
        "images": {n: encode_term(h.image(n)) for n, _ in h.source.symbols},
    }


def encode_word_to_tree_hom(h: WordToTreeHom) -> dict:
    return {
        "kind": "hom",
        "variant": "word_to_tree",
        "source": list(h.letters),
        "target": encode_alphabet(h.target),
        "images": {a: encode_term(h.image(a)) for a in h.letters},
        "end": encode_term(h.end),
    }


def decode_hom(doc: Mapping):
    variant = doc.get("variant")
    if variant == "word":
        # strings are letter sequences, arrays are explicit letter lists
        images = {a: tuple(w) for a, w in doc["images"].items()}
        return WordHom(tuple(doc["source"]), tuple(doc["target"]), images)
    if variant == "tree":
        return TreeHom(
            decode_alphabet(doc["source"]),
            decode_alphabet(doc["target"]),
            {a: decode_term(t) for a, t in doc["images"].items()},
        )
    if variant == "word_to_tree":
        return WordToTreeHom(
            tuple(doc["source"]),
            decode_alphabet(doc["target"]),
            {a: decode_term(t) for a, t in doc["images"].items()},
            decode_term(doc["end"]),
        )
    raise ParseError(f"unknown homomorphism variant {variant!r}")


# -- step functions and decompositions ------------------------------------------------


def encode_step(sf: StepFunction) -> dict:
    return {
        "kind": "step",
        "ring": encode_ring(sf.ring),
        "parts": [
            {"weight": encode_value(sf.ring, w), "language": encode_wfta(L)}
            for L, w in sf.parts
        ],
    }


def decode_step(doc: Mapping) -> StepFunction:
    ring = decode_ring(doc["ring"])
    parts = tuple(
        (decode_wfta(d["language"]), decode_value(ring, d["weight"]))
        for d in doc.get("parts", [])
    )
    sf = StepFunction(ring, parts)
    sf.check()
    return sf


def encode_nivat(d: NivatDecomposition, rank: int | None = None) -> dict:
    out = {
        "kind": "nivat",
        "alphabet": encode_alphabet(d.lam_alphabet),
        "letters": [
            {"name": name, "states": list(qbar), "sym": sym, "target": p}
            for name, (qbar, sym, p) in d.annotations.items()
        ],
        "h": encode_tree_hom(d.relabel),
        "L": encode_wfta(d.language),
        "Aw": encode_wfta(d.weights),
    }
    if rank is not None:
        out["rank"] = rank
    return out


def decode_nivat(doc: Mapping) -> NivatDecomposition:
    alphabet = decode_alphabet(doc["alphabet"])
    relabel = decode_hom(doc["h"])
    language = decode_wfta(doc["L"])
    weights = decode_wfta(doc["Aw"])
    annotations = {
        d["name"]: (tuple(d["states"]), d["sym"], d["target"])
        for d in doc.get("letters", [])
    }
    return NivatDecomposition(alphabet, relabel, language, weights, annotations)


# -- top level ---------------------------------------------------------------------


_DECODERS = {
    "wafa": decode_wafa,
    "wfta": decode_wfta,
    "pa": decode_pa,
    "hom": decode_hom,
    "step": decode_step,
    "nivat": decode_nivat,
}


def decode_document(doc: Mapping):
    if not isinstance(doc, Mapping):
        raise ParseError("a document is a JSON object")
    kind = doc.get("kind")
    decoder = _DECODERS.get(kind)
    if decoder is None:
        raise ParseError(f"unknown document kind {kind!r}")
    try:
        return decoder(doc)
    except ParseError:
        raise
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"malformed {kind} document: {exc}") from exc


def loads(text: str):
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from exc
    return decode_document(doc)


def load_path(path) -> Any:
    with open(path, "r", encoding="utf-8") as fh:
        return loads(fh.read())


def dumps(doc: Mapping) -> str:
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"
