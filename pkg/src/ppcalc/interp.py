"""Interpretation-functor data and its calculus.

An interpretation functor into Mod-S is given by a pp-pair phi/psi of
arity m over R together with one pp-2m-formula rho per S-basis element;
on a module M in its domain it produces phi(M)/psi(M) with the S-action
defined by the rhos.  This module provides the well-definedness and
module-axiom checks, evaluation on objects and maps, the Hom-functor
data of a bimodule, isolating pp-pairs relative to an inventory, and the
pullback of a pp-pair along the functor with its explicit bound on the
number of bound variables.
"""

from __future__ import annotations

from .algebra import Algebra
from .formulas import (
    PpFormula,
    PpPair,
    assemble,
    conj,
    eval_formula,
    pp_type_generator,
    sum_formula,
    zero_formula,
)
from .linalg import Mat, Subspace, quotient_basis
from .modules import (
    Bimodule,
    FDModule,
    ModuleMap,
    identity_map,
    rad_hom,
    validate_module,
)

__all__ = [
    "InterpData",
    "InterpImage",
    "IsolatingPair",
    "BoundReport",
    "InterpError",
    "check_welldefined",
    "axiom_pairs",
    "closure_report",
    "apply_interp",
    "apply_map",
    "hom_interp_data",
    "isolating_pair",
    "pullback_formula",
    "pullback_pair",
    "bounds",
]


class InterpError(ValueError):
    pass


class InterpData:
    """(m, phi/psi, one rho per S-basis element), everything over R."""

    def __init__(self, source: Algebra, target: Algebra, m: int, pair: PpPair, rhos):
        self.R = source
        self.S = target
        self.m = m
        self.pair = pair
        self.rhos = list(rhos)
        if pair.top.n != m or pair.bottom.n != m:
            raise InterpError(f"pair arity must be {m}")
        if pair.top.algebra != source:
            raise InterpError("pair must live over the source algebra")
        if len(self.rhos) != target.dim:
            raise InterpError("need one action formula per target basis element")
        for rho in self.rhos:
            if rho.n != 2 * m:
                raise InterpError(f"action formulas must have arity {2 * m}")
            if rho.algebra != source:
                raise InterpError("action formulas must live over the source algebra")

    @property
    def phi(self) -> PpFormula:
        return self.pair.top

    @property
    def psi(self) -> PpFormula:
        return self.pair.bottom

    def __repr__(self):
        return f"InterpData(m={self.m}, Mod-{self.R!r} -> Mod-{self.S!r})"


def _block_subst(field, n_slots: int, arity: int, blocks) -> Mat:
    """Slots -> formula variables; blocks lists (slot_offset, coeff) per
    m-block making up the formula's variables in order."""
    rows = [[0] * arity for _ in range(n_slots)]
    col = 0
    for parts, width in blocks:
        for off, coeff in parts:
            for t in range(width):
                rows[off + t][col + t] = coeff
        col += width
    return Mat.from_rows(field, rows)


def welldef_condition_pairs(data: InterpData, k: int):
    """The two pp-pairs whose closure on M makes rho_k well-defined.

    (1)  phi(x) -> exists y [phi(y) and rho(x, y)]
    (2)  exists x [psi(x) and rho(x, y)] -> psi(y)
    Each implication a -> b is encoded as the pair a / (a and b).
    """
    m = data.m
    field = data.R.field
    rho = data.rhos[k]
    # (1): free x-block, aux y-block
    c_phi_y = _block_subst(field, 2 * m, m, [([(m, 1)], m)])
    c_rho_xy = _block_subst(field, 2 * m, 2 * m, [([(0, 1)], m), ([(m, 1)], m)])
    exists_part = assemble(data.R, m, m, [(data.phi, c_phi_y), (rho, c_rho_xy)])
    pair1 = PpPair(data.phi, conj(data.phi, exists_part), justification="conj-with-top")
    # (2): free y-block, aux x-block
    c_psi_x = _block_subst(field, 2 * m, m, [([(m, 1)], m)])
    c_rho = _block_subst(field, 2 * m, 2 * m, [([(m, 1)], m), ([(0, 1)], m)])
    reach = assemble(data.R, m, m, [(data.psi, c_psi_x), (rho, c_rho)])
    pair2 = PpPair(reach, conj(reach, data.psi), justification="conj-with-top")
    return pair1, pair2


def check_welldefined(data: InterpData, module: FDModule):
    """Evaluate both well-definedness implications on a module.

    Returns a report with pass/fail and a witness vector per failing
    condition.
    """
    entries = []
    ok = True
    for k, label in enumerate(data.S.labels):
        pair1, pair2 = welldef_condition_pairs(data, k)
        row = {"generator": label}
        for name, pair in (("cond1", pair1), ("cond2", pair2)):
            top = eval_formula(pair.top, module)
            bot = eval_formula(pair.bottom, module)
            closed = top.dim == bot.dim
            row[name] = closed
            if not closed:
                ok = False
                for i in range(top.dim):
                    v = top.basis.row(i)
                    if not bot.contains_vector(v):
                        row[name + "_witness"] = v.to_rows()[0]
                        break
        entries.append(row)
    return {"check": "well-definedness", "ok": ok, "generators": entries}


def axiom_pairs(data: InterpData):
    """The p^2 + 2p pp-pairs axiomatising the functor's domain.

    For each basis pair (i, j) a pair forcing rho_i-then-rho_j to agree
    with the structure-constant combination of the rho_l, plus the two
    well-definedness pairs per generator.
    """
    m = data.m
    p = data.S.dim
    field = data.R.field
    out = []
    for k, label in enumerate(data.S.labels):
        pair1, pair2 = welldef_condition_pairs(data, k)
        out.append((f"welldef1[{label}]", pair1))
        out.append((f"welldef2[{label}]", pair2))
    # slots: x (free), u, v, w_1..w_p (aux)
    n_slots = m * (3 + p)
    x_off, u_off, v_off = 0, m, 2 * m

    def w_off(l):
        return (3 + l) * m

    for i in range(p):
        for j in range(p):
            alphas = data.S.mul[i][j]  # coeff row of s_i s_j over the S-basis
            instances = [
                (data.rhos[i], _block_subst(field, n_slots, 2 * m, [([(x_off, 1)], m), ([(u_off, 1)], m)])),
                (data.rhos[j], _block_subst(field, n_slots, 2 * m, [([(u_off, 1)], m), ([(v_off, 1)], m)])),
            ]
            for l in range(p):
                instances.append(
                    (data.rhos[l], _block_subst(field, n_slots, 2 * m, [([(x_off, 1)], m), ([(w_off(l), 1)], m)]))
                )
            parts = [(v_off, 1)]
            for l in range(p):
                a = alphas.entry(0, l)
                if a != 0:
                    parts.append((w_off(l), field.neg(a)))
            instances.append((data.psi, _block_subst(field, n_slots, m, [(parts, m)])))
            comp = assemble(data.R, m, n_slots - m, instances)
            pair = PpPair(data.phi, conj(data.phi, comp), justification="conj-with-top")
            out.append((f"compose[{data.S.labels[i]},{data.S.labels[j]}]", pair))
    return out


def closure_report(pairs, module: FDModule):
    """Which of the named pp-pairs are closed on the module."""
    entries = []
    ok = True
    for name, pair in pairs:
        closed = not pair.open_on(module)
        entries.append({"pair": name, "closed": closed})
        ok = ok and closed
    return {"check": "axiom-closure", "ok": ok, "pairs": entries}


class InterpImage:
    """The value of an interpretation functor on one module."""

    def __init__(self, data: InterpData, source: FDModule, module: FDModule,
                 phi_space: Subspace, psi_space: Subspace, reps):
        self.data = data
        self.source = source
        self.module = module
        self.phi_space = phi_space
        self.psi_space = psi_space
        self.reps = reps  # coset representatives, rows in source^m flattened
        self._stack = (
            Mat.vstack([psi_space.basis] + [r for r in reps])
            if (psi_space.dim or reps)
            else Mat.zeros(source.field, 0, phi_space.ambient)
        )

    def to_class(self, v: Mat) -> Mat:
        """Quotient coordinates of a vector of phi(M)."""
        if not self.reps:
            return Mat.zeros(self.source.field, 1, 0)
        x = self._stack.solve_left(v)
        if x is None:
            raise InterpError("vector is not in the sort's solution set")
        return x.take_columns(range(self.psi_space.dim, self._stack.rows))


def _solve_action(data: InterpData, module: FDModule, rho_space: Subspace,
                  phi_space: Subspace, rep: Mat) -> Mat:
    """One b with (rep, b) in rho(M) and b in phi(M)."""
    amb = phi_space.ambient
    field = module.field
    b1 = rho_space.basis.take_columns(range(amb))
    b2 = rho_space.basis.take_columns(range(amb, 2 * amb))
    top = Mat.hstack([b1, b2]) if rho_space.dim else Mat.zeros(field, 0, 2 * amb)
    bot = (
        Mat.hstack([Mat.zeros(field, phi_space.dim, amb), phi_space.basis])
        if phi_space.dim
        else Mat.zeros(field, 0, 2 * amb)
    )
    system = Mat.vstack([top, -bot])
    rhs = Mat.hstack([rep, Mat.zeros(field, 1, amb)])
    x = system.solve_left(rhs)
    if x is None:
        raise InterpError(
            "inconsistent data: no action value inside the sort "
            "(well-definedness condition (1) fails)"
        )
    c = x.take_columns(range(rho_space.dim))
    return c @ b2 if rho_space.dim else Mat.zeros(field, 1, amb)


def apply_interp(data: InterpData, module: FDModule, check: bool = True) -> InterpImage:
    """Evaluate the functor on a module: phi(M)/psi(M) with the rho-actions.

    With check=True (the default) the well-definedness conditions and
    axiom-pair closures are verified first and a failure raises.
    """
    if module.algebra != data.R:
        raise InterpError("module must live over the source algebra")
    if check:
        wd = check_welldefined(data, module)
        if not wd["ok"]:
            bad = [g["generator"] for g in wd["generators"] if not (g["cond1"] and g["cond2"])]
            raise InterpError(f"data not well-defined on module: generators {bad}")
        cl = closure_report(axiom_pairs(data), module)
        if not cl["ok"]:
            bad = [e["pair"] for e in cl["pairs"] if not e["closed"]]
            raise InterpError(f"axiom pairs open on module: {bad}")
    phi_space = eval_formula(data.phi, module)
    psi_space = eval_formula(data.psi, module)
    if not phi_space.contains(psi_space):
        raise InterpError("psi solutions not inside phi solutions")
    reps = quotient_basis(psi_space, phi_space)
    q = len(reps)
    image = InterpImage(data, module, None, phi_space, psi_space, reps)
    mats = []
    for k in range(data.S.dim):
        rho_space = eval_formula(data.rhos[k], module)
        coord_rows = []
        for rep in reps:
            b = _solve_action(data, module, rho_space, phi_space, rep)
            coord_rows.append(image.to_class(b).to_rows()[0])
        mats.append(
            Mat.from_rows(module.field, coord_rows)
            if q
            else Mat.zeros(module.field, 0, 0)
        )
    result = FDModule(data.S, q, mats)
    rep_result = validate_module(result)
    if not rep_result.ok:
        raise InterpError(f"constructed value is not an S-module: {rep_result.problems[0]}")
    image.module = result
    return image


def apply_map(data: InterpData, f: ModuleMap, img_src: InterpImage = None,
              img_tgt: InterpImage = None, check: bool = True) -> ModuleMap:
    """The induced map between functor values (componentwise image)."""
    if img_src is None:
        img_src = apply_interp(data, f.source, check=check)
    if img_tgt is None:
        img_tgt = apply_interp(data, f.target, check=check)
    big = Mat.identity(f.source.field, data.m).kron(f.matrix)
    rows = [img_tgt.to_class(rep @ big).to_rows()[0] for rep in img_src.reps]
    mat = (
        Mat.from_rows(f.source.field, rows)
        if rows and img_tgt.module.dim
        else Mat.zeros(f.source.field, img_src.module.dim, img_tgt.module.dim)
    )
    return ModuleMap(img_src.module, img_tgt.module, mat)


def hom_interp_data(b: Bimodule) -> InterpData:
    """Data of the functor Hom_R(B, -): Mod-R -> Mod-S.

    The sort is the pp-type generator of the generating tuple (so its
    solutions are exactly the hom images of the tuple) over x = 0, and
    the action of an S-basis element is the quantifier-free formula
    rewriting the tuple by the left action expressed in right-action
    coordinates.
    """
    r_mod = b.right_module()
    n = len(b.generators)
    phi = pp_type_generator(r_mod, b.generators)
    psi = zero_formula(b.R, n)
    # express s_k * t_i as sum_j t_j r_ji with r_ji in R
    rows = []
    for j in range(n):
        for l in range(b.R.dim):
            rows.append((b.generators[j] @ b.right_action[l]).to_rows()[0])
    gen_mat = Mat.from_rows(b.field, rows)
    rhos = []
    one = b.R.one_element()
    for k in range(b.S.dim):
        lmat = b.left_action[k]
        coeffs = {}
        for i in range(n):
            target = b.generators[i] @ lmat
            sol = gen_mat.solve_left(target)
            if sol is None:
                raise InterpError("left action escapes the generated module")
            for j in range(n):
                r_ji = sol.take_columns(range(j * b.R.dim, (j + 1) * b.R.dim))
                if not r_ji.is_zero():
                    coeffs[(j, i)] = b.R.element(r_ji)
            coeffs[(n + i, i)] = -one
        rhos.append(PpFormula(b.R, 2 * n, 0, n, coeffs))
    pair = PpPair(phi, psi)
    return InterpData(b.R, b.S, n, pair, rhos)


class IsolatingPair:
    """A pp-1-pair open exactly on modules with the subject as a summand.

    The guarantee is scoped: it holds for direct sums of the inventory
    members the pair was built against.
    """

    def __init__(self, pair: PpPair, subject: FDModule, scope: str):
        self.pair = pair
        self.subject = subject
        self.scope = scope

    def open_on(self, module: FDModule) -> bool:
        return self.pair.open_on(module)

    def __repr__(self):
        return f"IsolatingPair(subject dim {self.subject.dim}, scope {self.scope})"


def isolating_pair(subject: FDModule, a_vec: Mat, inventory_members, seed: int = 0) -> IsolatingPair:
    """Isolate an indecomposable inside sums of inventory members.

    top: the pp-type generator of a nonzero element a; bottom: the sum of
    the pp-type generators of g(a) over a basis g of rad Hom(subject, X)
    for each inventory member X, plus x = 0.  A section of the subject
    keeps a out of the bottom (a radical endomorphism is nilpotent), and
    any non-split image lands in it.
    """
    a_vec = subject.element(a_vec)
    if a_vec.is_zero():
        raise InterpError("the isolated element must be nonzero")
    if subject._indec is not True:
        raise InterpError("subject must be certified indecomposable")
    algebra = subject.algebra
    phi = pp_type_generator(subject, [a_vec])
    bottom = zero_formula(algebra, 1)
    triv_subject = [(subject, identity_map(subject), identity_map(subject))]
    for x in inventory_members:
        triv_x = [(x, identity_map(x), identity_map(x))]
        for g in rad_hom(subject, x, seed, decomp_m=triv_subject, decomp_n=triv_x):
            image = a_vec @ g.matrix
            bottom = sum_formula(bottom, pp_type_generator(x, [image]))
    pair = PpPair(phi, bottom)
    d = subject.dim
    if phi.c != d:
        raise InterpError("internal: generator has unexpected bound-variable count")
    if phi.e > d * algebra.dim + 1:
        raise InterpError("internal: generator exceeds its equation bound")
    dims = sorted({m.dim for m in inventory_members})
    return IsolatingPair(pair, subject, f"direct sums of inventory members (dims {dims})")


def pullback_formula(data: InterpData, gamma: PpFormula) -> PpFormula:
    """Pull a pp-1-formula over S back along the functor.

    A tuple is a solution exactly when its class in the functor value
    satisfies gamma; each of gamma's variables becomes an m-block, bound
    witnesses for the S-scalar actions are routed through the rhos, and
    each equation is forced into psi.
    """
    if gamma.n != 1:
        raise InterpError("pullback expects a formula of arity 1")
    if gamma.algebra != data.S:
        raise InterpError("formula must live over the target algebra")
    m = data.m
    p = data.S.dim
    field = data.R.field
    d = gamma.c
    e = gamma.e
    # slots: X (free), Y_j, Z_k, W_i, U_jk
    y_off = m
    z_off = y_off + d * m
    w_off = z_off + p * m
    u_off = w_off + e * m
    n_slots = u_off + d * p * m

    def u_block(j, k):
        return u_off + (j * p + k) * m

    instances = [(data.phi, _block_subst(field, n_slots, m, [([(0, 1)], m)]))]
    for k in range(p):
        instances.append((data.phi, _block_subst(field, n_slots, m, [([(z_off + k * m, 1)], m)])))
    for j in range(d):
        instances.append((data.phi, _block_subst(field, n_slots, m, [([(y_off + j * m, 1)], m)])))
    for j in range(d):
        for k in range(p):
            instances.append((data.phi, _block_subst(field, n_slots, m, [([(u_block(j, k), 1)], m)])))
    for k in range(p):
        instances.append(
            (data.rhos[k], _block_subst(field, n_slots, 2 * m, [([(0, 1)], m), ([(z_off + k * m, 1)], m)]))
        )
    for j in range(d):
        for k in range(p):
            instances.append(
                (data.rhos[k], _block_subst(field, n_slots, 2 * m, [([(y_off + j * m, 1)], m), ([(u_block(j, k), 1)], m)]))
            )
    for i in range(e):
        instances.append((data.psi, _block_subst(field, n_slots, m, [([(w_off + i * m, 1)], m)])))
    raw_cols = []
    zero = data.R.zero_element()
    one = data.R.one_element()
    for i in range(e):
        b_i = gamma.entry(0, i).coeffs
        alphas = [gamma.entry(1 + j, i).coeffs for j in range(d)]
        for t in range(m):
            col = [zero] * n_slots
            for k in range(p):
                beta = b_i.entry(0, k)
                if beta != 0:
                    col[z_off + k * m + t] = one * beta
                for j in range(d):
                    alpha = alphas[j].entry(0, k)
                    if alpha != 0:
                        col[u_block(j, k) + t] = one * alpha
            col[w_off + i * m + t] = -one
            raw_cols.append(col)
    return assemble(data.R, m, n_slots - m, instances, raw_cols)


class BoundReport:
    """The bound-variable budget of a pulled-back pair."""

    def __init__(self, d, m, p, c_phi, c_psi, c_rhos, dim_r, c_sigma=None):
        self.d = d
        self.m = m
        self.p = p
        self.c_phi = c_phi
        self.c_psi = c_psi
        self.c_rhos = list(c_rhos)
        self.dim_r = dim_r
        self.n_d = (
            m * (d + p + (d * p + 1) + d * p)
            + (1 + p + d + d * p) * c_phi
            + (d + 1) * sum(self.c_rhos)
            + (d * p + 1) * c_psi
        )
        self.b_d = (self.n_d + m) * dim_r
        self.c_sigma = c_sigma

    def as_dict(self):
        out = {
            "d": self.d,
            "m": self.m,
            "p": self.p,
            "c_phi": self.c_phi,
            "c_psi": self.c_psi,
            "c_rhos": self.c_rhos,
            "dim_r": self.dim_r,
            "n_d": self.n_d,
            "b_d": self.b_d,
        }
        if self.c_sigma is not None:
            out["c_sigma"] = self.c_sigma
        return out

    def __repr__(self):
        return f"BoundReport(n_{self.d} = {self.n_d}, b_{self.d} = {self.b_d})"


def bounds(d: int, m: int, p: int, c_phi: int = 0, c_psi: int = 0,
           c_rhos=None, dim_r: int = 1) -> BoundReport:
    """Pure bound arithmetic for given data statistics."""
    if d < 1:
        raise InterpError("bounds need d >= 1")
    if c_rhos is None:
        c_rhos = [0] * p
    return BoundReport(d, m, p, c_phi, c_psi, c_rhos, dim_r)


def pullback_pair(data: InterpData, pair: PpPair, d: int):
    """Pull back an isolating pair; returns (sigma/tau, bound report).

    The top formula must be in the presentation shape: exactly d bound
    variables and at most d * dim S + 1 equations.  tau is the pullback
    of the bottom conjoined with sigma, making the pair inequality
    structural.
    """
    gamma, delta = pair.top, pair.bottom
    p = data.S.dim
    if gamma.c != d or gamma.e > d * p + 1:
        raise InterpError(
            f"top formula not in presentation shape (c = {gamma.c}, e = {gamma.e}); "
            "renormalise via pp_type_generator"
        )
    sigma = pullback_formula(data, gamma)
    tau = conj(pullback_formula(data, delta), sigma)
    out = PpPair(sigma, tau, justification="conj-with-top")
    report = BoundReport(
        d,
        data.m,
        p,
        data.phi.c,
        data.psi.c,
        [rho.c for rho in data.rhos],
        data.R.dim,
        c_sigma=sigma.c,
    )
    if sigma.c > report.n_d:
        raise InterpError(
            f"internal: pulled-back formula exceeds its bound ({sigma.c} > {report.n_d})"
        )
    return out, report
