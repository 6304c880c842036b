"""The lattice map induced by a bimodule with a chosen generating tuple.

Given an (S, R)-bimodule B whose right module is generated by an n-tuple
t, every pp formula in one free variable over S is sent to the pp-n-
formula over R generating the pp-type of c tensor t inside C tensor B,
for (C, c) a free realisation.  This map is a lattice homomorphism; when
tensoring with B is a representation embedding it is a lattice embedding.
verify_lattice_hom and verify_embedding machine-check both statements on
a finite sample of formulas.
"""

from __future__ import annotations

from .formulas import (
    FormulaError,
    FreeRealisation,
    PpFormula,
    conj,
    equivalent,
    free_realisation,
    implies,
    meet_realisation,
    pp_type_generator,
    sum_formula,
    zero_formula,
)
from .modules import Bimodule, ModuleError, decompose, direct_sum_many, tensor_over

__all__ = [
    "BetaMap",
    "beta",
    "meet_via_pushout",
    "minimize_realisation",
    "standard_sample",
    "verify_lattice_hom",
    "verify_embedding",
]


def minimize_realisation(fr: FreeRealisation, seed: int = 0) -> FreeRealisation:
    """Drop direct summands on which the tuple vanishes.

    The pp-type of a tuple ignores summands with zero component, so this
    keeps the realisation property while shrinking the module.  Returns
    the input unchanged when the decomposition cannot be certified.
    """
    try:
        pieces = decompose(fr.module, seed)
    except ModuleError:
        return fr
    keep = []
    for piece, incl, proj in pieces:
        if any(not (t @ proj.matrix).is_zero() for t in fr.tuple):
            keep.append((piece, incl, proj))
    if len(keep) == len(pieces):
        return fr
    total, incls, _ = direct_sum_many([p for p, _, _ in keep], algebra=fr.module.algebra)
    tup = []
    for t in fr.tuple:
        v = total.zero_vector()
        for (piece, _, proj), inc in zip(keep, incls):
            v = v + inc(t @ proj.matrix)
        tup.append(v)
    return FreeRealisation(total, tup, fr.formula)


class BetaMap:
    """The pp-lattice map attached to a bimodule and its generating tuple."""

    def __init__(self, bimodule: Bimodule):
        self.bimodule = bimodule
        self.n = len(bimodule.generators)

    def __call__(self, phi: PpFormula) -> PpFormula:
        return beta(self, phi)

    def __repr__(self):
        return f"BetaMap(pp1 over {self.bimodule.S!r} -> pp{self.n} over {self.bimodule.R!r})"


def beta(bmap: BetaMap, phi: PpFormula) -> PpFormula:
    """Image of a one-variable formula under the lattice map.

    Takes a free realisation (C, c), tensors with the bimodule, and
    returns a generator of the pp-type of the tuple c tensor t.
    """
    if phi.n != 1:
        raise FormulaError("beta is defined on formulas of arity 1")
    if phi.algebra != bmap.bimodule.S:
        raise FormulaError("formula must live over the bimodule's left algebra")
    fr = free_realisation(phi)
    t = tensor_over(fr.module, bmap.bimodule)
    tup = [t.pure_tensor(fr.tuple[0], g) for g in bmap.bimodule.generators]
    return pp_type_generator(t.module, tup)


def meet_via_pushout(phi: PpFormula, psi: PpFormula, seed: int = 0) -> FreeRealisation:
    """Free realisation of the meet via the pushout of the tuple maps.

    The returned tuple is the common image of the two realisation tuples;
    its pp-type generator is equivalent to conj(phi, psi).  Summands on
    which the tuple vanishes are stripped.
    """
    if phi.n != psi.n:
        raise FormulaError("meet needs equal arities")
    if phi.algebra != psi.algebra:
        raise FormulaError("meet needs a common algebra")
    return minimize_realisation(meet_realisation(phi, psi, conj(phi, psi)), seed)


def standard_sample(algebra, modules, close: bool = True):
    """pp-type generators of all elements (up to scalar) of the given
    modules, optionally closed once under conj and sum.

    Deterministic order; duplicates are removed syntactically, not up to
    equivalence.  Prime fields only (elements are enumerated).
    """
    field = algebra.field
    if not field.is_prime_field:
        raise FormulaError("sample generation enumerates elements: prime fields only")
    p = field.p
    base = [zero_formula(algebra, 1)]
    seen = {base[0].key()}
    for m in modules:
        for vec in m.elements():
            if vec.is_zero():
                continue
            # normalise: first nonzero coordinate = 1 (scalar orbits coincide)
            lead = next(
                vec.entry(0, j) for j in range(m.dim) if vec.entry(0, j) != 0
            )
            vec = vec.scale(field.inv(lead))
            gen = pp_type_generator(m, [vec])
            if gen.key() not in seen:
                seen.add(gen.key())
                base.append(gen)
    if not close:
        return base
    out = list(base)
    for i in range(len(base)):
        for j in range(i + 1, len(base)):
            for made in (conj(base[i], base[j]), sum_formula(base[i], base[j])):
                if made.key() not in seen:
                    seen.add(made.key())
                    out.append(made)
    return out


def verify_lattice_hom(bmap: BetaMap, sample):
    """Check meet/join/order preservation of the map on all sample pairs.

    Returns a report dict; failures carry the witnessing pair of sample
    indices and the violated law.
    """
    betas = [beta(bmap, f) for f in sample]
    failures = []
    pairs = 0

    def witness(law, i, j):
        from .io import formula_to_json

        return {
            "law": law,
            "pair": [i, j],
            "witness_formulas": [formula_to_json(sample[i]), formula_to_json(sample[j])],
        }

    for i in range(len(sample)):
        for j in range(i, len(sample)):
            pairs += 1
            bc = beta(bmap, conj(sample[i], sample[j]))
            if not equivalent(bc, conj(betas[i], betas[j])):
                failures.append(witness("meet", i, j))
            bs = beta(bmap, sum_formula(sample[i], sample[j]))
            if not equivalent(bs, sum_formula(betas[i], betas[j])):
                failures.append(witness("join", i, j))
    for i in range(len(sample)):
        for j in range(len(sample)):
            if i != j and implies(sample[i], sample[j]):
                if not implies(betas[i], betas[j]):
                    failures.append(witness("order", i, j))
    return {
        "check": "lattice-homomorphism",
        "sample_size": len(sample),
        "pairs_checked": pairs,
        "failures": failures,
        "ok": not failures,
    }


def verify_embedding(bmap: BetaMap, sample):
    """Check that strict inequalities map to strict inequalities."""
    betas = [beta(bmap, f) for f in sample]
    failures = []
    strict = 0
    for i in range(len(sample)):
        for j in range(len(sample)):
            if i == j:
                continue
            if implies(sample[i], sample[j]) and not implies(sample[j], sample[i]):
                strict += 1
                if implies(betas[j], betas[i]):
                    from .io import formula_to_json

                    failures.append(
                        {
                            "pair": [i, j],
                            "witness_formulas": [
                                formula_to_json(sample[i]),
                                formula_to_json(sample[j]),
                            ],
                        }
                    )
    return {
        "check": "lattice-embedding",
        "sample_size": len(sample),
        "strict_pairs": strict,
        "failures": failures,
        "ok": not failures,
    }
