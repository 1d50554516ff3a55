"""Executable law checking for finite crystal graphs.

``check_axioms`` verifies the defining crystal laws on a generated
graph; ``check_category_profile`` the optional highest-weight-category
profile at imaginary indices; ``check_morphism`` the morphism laws for
an explicit node-to-node witness.  Reports are machine-readable lists
of (node, index, law, expected, found); relations that would need a
lowering successor cut off by the truncation are skipped and counted,
so a clean run reads "0 violations, k skipped".
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .cartan import NEG_INF, Weight, is_neg_inf
from .graph import CUT, validate_structure


@dataclass
class Violation:
    node: object
    index: object
    law: str
    expected: object = None
    found: object = None

    def __str__(self):
        return (
            f"node={self.node} i={self.index} law={self.law} "
            f"expected={self.expected!r} found={self.found!r}"
        )


@dataclass
class CheckReport:
    violations: list = field(default_factory=list)
    coverage_errors: list = field(default_factory=list)
    checked: int = 0
    skipped: int = 0

    @property
    def ok(self) -> bool:
        return not self.violations and not self.coverage_errors

    def add(self, node, index, law, expected=None, found=None):
        self.violations.append(Violation(node, index, law, expected, found))

    def merge(self, other: "CheckReport"):
        self.violations.extend(other.violations)
        self.coverage_errors.extend(other.coverage_errors)
        self.checked += other.checked
        self.skipped += other.skipped

    def summary(self) -> str:
        base = f"{len(self.violations)} violations, {self.skipped} skipped ({self.checked} checks)"
        if self.coverage_errors:
            base += f", {len(self.coverage_errors)} coverage errors"
        return base

    def lines(self, limit=20):
        out = [str(v) for v in self.violations[:limit]]
        out.extend(f"coverage: {c}" for c in self.coverage_errors[:limit])
        return out


def check_axioms(graph) -> CheckReport:
    """Verify the crystal laws on every node of a finite graph.

    Checked per node and index, skipping anything that involves a cut
    successor:

      * weight steps:  wt(e_i b) = wt b + alpha_i, wt(f_i b) = wt b - alpha_i;
      * the statistics identity phi_i = eps_i + <h_i, wt b>, read in
        Z ∪ {-inf} (both sides -inf counts as equal);
      * duality: stored raising and lowering fans invert each other;
      * statistic steps along edges, split real (eps -+1, phi +-1)
        versus imaginary (eps constant, phi shifts by a_ii);
      * dead ends: phi_i = -inf forces e_i b = f_i b = 0.
    """
    validate_structure(graph)
    datum = graph.datum
    rep = CheckReport()
    for u, node in enumerate(graph.nodes):
        for i in datum.indices():
            eps_u, phi_u = node.eps[i], node.phi[i]
            real = datum.is_real(i)

            rep.checked += 1
            expected_phi = eps_u + datum.pairing(i, node.wt)
            if phi_u != expected_phi:
                rep.add(u, i, "phi_eps_pairing", expected_phi, phi_u)

            if is_neg_inf(phi_u):
                for entry in (node.e_ids[i], node.f_ids[i]):
                    if entry is CUT:
                        rep.skipped += 1
                    else:
                        rep.checked += 1
                        if entry is not None:
                            rep.add(u, i, "neg_inf_dead_end", None, entry)

            w = node.e_ids[i]
            if w is CUT:
                rep.skipped += 1
            elif w is not None:
                up = graph.nodes[w]
                rep.checked += 1
                if up.wt != node.wt + datum.alpha(i):
                    rep.add(u, i, "e_weight_step", node.wt + datum.alpha(i), up.wt)
                rep.checked += 1
                if real:
                    want = (eps_u - 1, phi_u + 1)
                else:
                    want = (eps_u, phi_u + datum.a(i, i))
                got = (up.eps[i], up.phi[i])
                if got != want:
                    rep.add(u, i, "e_stat_step", want, got)
                back = up.f_ids[i]
                if back is CUT:
                    rep.skipped += 1
                else:
                    rep.checked += 1
                    if back != u:
                        rep.add(u, i, "ef_duality", u, back)

            v = node.f_ids[i]
            if v is CUT:
                rep.skipped += 1
            elif v is not None:
                dn = graph.nodes[v]
                rep.checked += 1
                if dn.wt != node.wt - datum.alpha(i):
                    rep.add(u, i, "f_weight_step", node.wt - datum.alpha(i), dn.wt)
                rep.checked += 1
                if real:
                    want = (eps_u + 1, phi_u - 1)
                else:
                    want = (eps_u, phi_u - datum.a(i, i))
                got = (dn.eps[i], dn.phi[i])
                if got != want:
                    rep.add(u, i, "f_stat_step", want, got)
                back = dn.e_ids[i]
                if back is CUT:
                    rep.skipped += 1
                else:
                    rep.checked += 1
                    if back != u:
                        rep.add(u, i, "ef_duality", u, back)
    return rep


def check_category_profile(graph) -> CheckReport:
    """Optional profile at imaginary indices: wt_i(b) >= 0, eps_i(b) in
    Z_{<=0} ∪ {-inf}, phi_i(b) in Z_{>=0} ∪ {-inf}."""
    datum = graph.datum
    rep = CheckReport()
    for u, node in enumerate(graph.nodes):
        for i in datum.imaginary_indices:
            rep.checked += 3
            wt_i = datum.pairing(i, node.wt)
            if wt_i < 0:
                rep.add(u, i, "imaginary_wt_nonneg", ">=0", wt_i)
            if not (is_neg_inf(node.eps[i]) or node.eps[i] <= 0):
                rep.add(u, i, "imaginary_eps_nonpositive", "<=0 or -inf", node.eps[i])
            if not (is_neg_inf(node.phi[i]) or node.phi[i] >= 0):
                rep.add(u, i, "imaginary_phi_nonnegative", ">=0 or -inf", node.phi[i])
    return rep


@dataclass
class MorphismWitness:
    """A finite map between two graphs, given as node id -> node id.

    ``weight_shift`` relaxes weight preservation to wt(psi b) = wt(b) - shift
    (eps preserved, phi shifted accordingly), which is the law satisfied
    by the highest-weight-forgetting projection; the default shift is
    zero, i.e. a plain morphism.
    """

    mapping: dict
    strict: bool = False
    embedding: bool = False
    weight_shift: Weight | None = None


def check_morphism(witness: MorphismWitness, src, dst) -> CheckReport:
    """Verify the morphism laws of a witness between two graphs.

    Plain morphism: statistics preserved and the witness commutes with
    lowering wherever the source edge exists (raising commutation is
    checked too, being a consequence).  ``strict`` additionally demands
    that zeros map to zeros on both sides; ``embedding`` demands
    injectivity.  Missing non-frontier domain nodes are coverage errors,
    reported separately from law violations.
    """
    validate_structure(src)
    validate_structure(dst)
    datum = src.datum
    rep = CheckReport()
    mapping = witness.mapping
    shift = witness.weight_shift if witness.weight_shift is not None else datum.zero_weight()

    for u, node in enumerate(src.nodes):
        if u not in mapping:
            if not node.frontier:
                rep.coverage_errors.append(f"non-frontier source node {u} is unmapped")
            continue
        tgt = mapping[u]
        if not (isinstance(tgt, int) and 0 <= tgt < len(dst.nodes)):
            rep.coverage_errors.append(f"node {u} maps to missing target {tgt!r}")
            continue
        img = dst.nodes[tgt]

        rep.checked += 1
        if img.wt != node.wt - shift:
            rep.add(u, None, "morphism_wt", node.wt - shift, img.wt)
        for i in datum.indices():
            rep.checked += 2
            if img.eps[i] != node.eps[i]:
                rep.add(u, i, "morphism_eps", node.eps[i], img.eps[i])
            expected_phi = node.phi[i] - datum.pairing(i, shift)
            if img.phi[i] != expected_phi:
                rep.add(u, i, "morphism_phi", expected_phi, img.phi[i])

            sv, dv = node.f_ids[i], img.f_ids[i]
            if sv is CUT:
                rep.skipped += 1
            elif sv is None:
                if witness.strict:
                    if dv is CUT:
                        rep.skipped += 1
                    else:
                        rep.checked += 1
                        if dv is not None:
                            rep.add(u, i, "f_zero", None, dv)
            else:
                if sv not in mapping or dv is CUT:
                    rep.skipped += 1
                else:
                    rep.checked += 1
                    if dv != mapping[sv]:
                        rep.add(u, i, "f_commute", mapping[sv], dv)

            sw, dw = node.e_ids[i], img.e_ids[i]
            if sw is CUT:
                rep.skipped += 1
            elif sw is None:
                if witness.strict:
                    if dw is CUT:
                        rep.skipped += 1
                    else:
                        rep.checked += 1
                        if dw is not None:
                            rep.add(u, i, "e_zero", None, dw)
            else:
                if sw not in mapping or dw is CUT:
                    rep.skipped += 1
                else:
                    rep.checked += 1
                    if dw != mapping[sw]:
                        rep.add(u, i, "e_commute", mapping[sw], dw)

    if witness.embedding:
        seen = {}
        for u in sorted(mapping):
            tgt = mapping[u]
            rep.checked += 1
            if tgt in seen:
                rep.add(u, None, "injective", f"distinct from node {seen[tgt]}", tgt)
            else:
                seen[tgt] = u
    return rep
