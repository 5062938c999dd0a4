"""Batch front door: subcommand dispatch, file I/O, and cross-check reports.

Every subcommand prints a report whose FAIL lines always carry both sides
of the comparison, and the process exits 0 only when every check passed.
Randomized runs take an explicit --seed so reports are byte-stable.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import random
import sys
from dataclasses import dataclass, field
from pathlib import Path

from . import fileio
from .digraph import (
    Digraph,
    cycle_length_multiset,
    oriented_cycle,
    strong_components,
    weak_components,
)
from .errors import HProductError
from .labeling import (
    MagicCertificate,
    SemDigraph,
    amplify_magic_sums,
    product_labeling,
    product_magic_sum,
    search_labelings,
    sem_odd_cycle,
    verify,
)
from .permutations import from_one_regular, predict_components, product_of
from .product import Family, HAssignment, otimes_h
from .rainbow import (
    circuit_arc_lengths,
    circuits_partition_arcs,
    find_rainbow_circuits,
    forward_cycle_arcs,
    union_multidigraph,
)
from .unicyclic import (
    UnicyclicForm,
    assemble,
    detect_period,
    execute_plan,
    form_multiset,
    orient_components,
    plan_decomposition,
    predict_from_reversals,
    recognize,
    reversal_assignment,
)

DEFAULT_SEED = 7


@dataclass
class CheckItem:
    name: str
    passed: bool
    expected: str
    actual: str


@dataclass
class RunReport:
    subcommand: str
    inputs: dict[str, str] = field(default_factory=dict)
    items: list[CheckItem] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    def check(self, name: str, expected, actual) -> bool:
        ok = expected == actual
        self.items.append(CheckItem(name, ok, repr(expected), repr(actual)))
        return ok

    def note(self, text: str) -> None:
        self.notes.append(text)

    @property
    def passed(self) -> bool:
        return all(item.passed for item in self.items)

    def render_text(self) -> str:
        out = [f"== {self.subcommand} =="]
        for name, digest in self.inputs.items():
            out.append(f"input {name}: {digest}")
        out.extend(self.notes)
        for item in self.items:
            if item.passed:
                out.append(f"PASS {item.name}")
            else:
                out.append(
                    f"FAIL {item.name}: expected {item.expected}, actual {item.actual}"
                )
        out.append("OK" if self.passed else "FAILED")
        return "\n".join(out) + "\n"

    def render_json(self) -> str:
        payload = {
            "subcommand": self.subcommand,
            "inputs": self.inputs,
            "notes": self.notes,
            "items": [vars(i) for i in self.items],
            "passed": self.passed,
        }
        return json.dumps(payload, indent=2, sort_keys=True) + "\n"


def _digest(path: str) -> str:
    return hashlib.sha256(Path(path).read_bytes()).hexdigest()[:12]


def _read(report: RunReport, path: str) -> str:
    report.inputs[path] = _digest(path)
    return Path(path).read_text()


def _emit(report: RunReport, args) -> int:
    text = report.render_json() if args.format == "json" else report.render_text()
    sys.stdout.write(text)
    return 0 if report.passed else 1


def _write_dot(args, content: str) -> None:
    if getattr(args, "dot", None):
        Path(args.dot).write_text(content)


def _component_note(report: RunReport, product: Digraph) -> None:
    if product.is_one_regular():
        report.note(f"cycle length multiset: {cycle_length_multiset(product)}")
    else:
        weak = sorted(len(c) for c in weak_components(product))
        strong = sorted(len(c) for c in strong_components(product))
        report.note(f"weak component sizes: {weak}")
        report.note(f"strong component sizes: {strong}")


def cmd_product(args) -> int:
    report = RunReport("product")
    host = fileio.loads_digraph(_read(report, args.host))
    fam = fileio.loads_family(_read(report, args.family))
    h = fileio.loads_assignment(_read(report, args.assignment), host.order)
    prod = otimes_h(host, fam, h)
    report.note(f"product: {prod.order} vertices, {prod.size} arcs")
    _component_note(report, prod)
    if args.out:
        Path(args.out).write_text(fileio.dumps_digraph(prod))
        report.note(f"wrote {args.out}")
    _write_dot(args, fileio.dot_digraph(prod, "product"))
    report.check("product constructed", True, prod.order == host.order * fam.carrier_order)
    return _emit(report, args)


def _random_one_regular(rng: random.Random, n: int) -> Digraph:
    image = list(range(n))
    rng.shuffle(image)
    return Digraph(n, ((i, image[i]) for i in range(n)), allow_loops=True)


def _three_way(m: int, fam: Family, h: HAssignment) -> tuple[list[int], list[int], list[int]]:
    factors = [
        from_one_regular(fam.member(h.name_for(arc))) for arc in forward_cycle_arcs(h)
    ]
    predicted = predict_components(m, product_of(factors))
    colored = union_multidigraph(m, fam, h)
    rainbow_lengths = circuit_arc_lengths(find_rainbow_circuits(colored))
    brute = cycle_length_multiset(otimes_h(h.host_digraph(), fam, h))
    return predicted, rainbow_lengths, brute


def cmd_predict(args) -> int:
    report = RunReport("predict")
    if args.random:
        rng = random.Random(args.seed)
        failures = 0
        for _ in range(args.trials):
            m = rng.randint(2, args.max_m)
            n = rng.randint(2, args.max_n)
            members = [(f"F{i}", _random_one_regular(rng, n)) for i in range(rng.randint(1, 3))]
            fam = Family(n, members)
            names = [name for name, _ in members]
            h = HAssignment(
                m,
                (((i, (i + 1) % m), rng.choice(names)) for i in range(m)),
            )
            predicted, rainbow_lengths, brute = _three_way(m, fam, h)
            if not (predicted == rainbow_lengths == brute):
                failures += 1
        report.note(f"{args.trials} randomized trials with seed {args.seed}")
        report.check("all trials agree", 0, failures)
        return _emit(report, args)

    if args.forms:
        if args.n is None:
            raise SystemExit("predict: form mode needs --n")
        forms = [fileio.loads_form(_read(report, path)) for path in args.forms]
        reversals = (
            [int(tok) for tok in args.reversals.split(",")]
            if args.reversals
            else [0] * len(forms)
        )
        if len(reversals) != len(forms):
            raise SystemExit("predict: one reversal count per form is required")
        for i, (form, r) in enumerate(zip(forms, reversals), start=1):
            predicted = form_multiset(predict_from_reversals([form], args.n, [r]))
            digraph, comps = orient_components(assemble(form))
            h = reversal_assignment(digraph, comps, [r])
            fam = Family(
                args.n,
                [
                    ("C+", oriented_cycle(args.n, "forward")),
                    ("C-", oriented_cycle(args.n, "backward")),
                ],
            )
            actual = form_multiset(recognize(otimes_h(digraph, fam, h).underlying()))
            report.check(
                f"component {i}: prediction matches brute force",
                sorted(predicted.items()),
                sorted(actual.items()),
            )
        return _emit(report, args)

    if not (args.family and args.assignment and args.m):
        raise SystemExit("predict: either --random, --forms, or -m with family and assignment files")
    fam = fileio.loads_family(_read(report, args.family))
    h = fileio.loads_assignment(_read(report, args.assignment), args.m)
    predicted, rainbow_lengths, brute = _three_way(args.m, fam, h)
    report.note(f"components predicted from permutation cycles: {predicted}")
    report.check("permutation prediction matches brute force", brute, predicted)
    report.check("rainbow circuit lengths match brute force", brute, rainbow_lengths)
    return _emit(report, args)


def cmd_rainbow(args) -> int:
    report = RunReport("rainbow")
    fam = fileio.loads_family(_read(report, args.family))
    h = fileio.loads_assignment(_read(report, args.assignment), args.m)
    colored = union_multidigraph(args.m, fam, h)
    circuits = find_rainbow_circuits(colored)
    for idx, walk in enumerate(circuits, start=1):
        steps = []
        for t, u in enumerate(walk):
            steps.append(f"{u + 1} -[{t % args.m}]->")
        steps.append(str(walk[0] + 1))
        report.note(f"circuit {idx} (length {len(walk)}): " + " ".join(steps))
    report.check("circuits partition the arc copies", True,
                 circuits_partition_arcs(colored, circuits))
    report.note(f"rainbow eulerian: {len(circuits) == 1}")
    _write_dot(args, fileio.dot_colored(colored, circuits))
    return _emit(report, args)


def cmd_label(args) -> int:
    return {
        "verify": _label_verify,
        "search": _label_search,
        "product": _label_product,
        "amplify": _label_amplify,
    }[args.action](args)


def _label_verify(args) -> int:
    report = RunReport("label verify")
    lf = fileio.loads_labeling(_read(report, args.labeling))
    cert = verify(lf.labeling)
    if cert is None:
        report.check("edge sums share one value", "one magic sum", "edge sums disagree")
        return _emit(report, args)
    report.check("declared magic sum", lf.magic_sum, cert.magic_sum)
    report.check("declared super flag", lf.is_super, cert.is_super)
    return _emit(report, args)


def _label_search(args) -> int:
    report = RunReport("label search")
    g = fileio.loads_graph(_read(report, args.graph))
    certs = search_labelings(
        g, super_only=args.super_only, limit=args.limit, max_size=args.max_size
    )
    report.note(f"found {len(certs)} labelings; sums: {sorted({c.magic_sum for c in certs})}")
    for cert in certs[: args.show]:
        report.note(fileio.dumps_labeling(cert).rstrip().replace("\n", "; "))
    report.check("search completed", True, True)
    return _emit(report, args)


def _oriented_sem(cert: MagicCertificate) -> SemDigraph:
    """Rename a unicyclic-union certificate's graph by labels and orient it."""
    g = cert.labeling.graph
    f = cert.labeling.vertex_labels
    digraph, _ = orient_components(g)
    arcs = [(f[u] - 1, f[v] - 1) for u, v in digraph.arcs()]
    return SemDigraph(Digraph(g.order, arcs), cert.magic_sum)


def _label_product(args) -> int:
    report = RunReport("label product")
    host = fileio.loads_digraph(_read(report, args.host))
    lf = fileio.loads_labeling(_read(report, args.labeling))
    cert = verify(lf.labeling)
    if cert is None:
        report.check("host labeling verifies", "a magic certificate", "edge sums disagree")
        return _emit(report, args)
    sem = sem_odd_cycle(args.n)
    members = {"C+": sem, "C-": sem.reverse()}
    if args.assignment:
        h = fileio.loads_assignment(_read(report, args.assignment), host.order)
    else:
        h = HAssignment.constant(host, "C+")
    labeled = product_labeling(host, cert, members, h)
    out_cert = verify(labeled)
    expected = product_magic_sum(cert.magic_sum, args.n, sem.magic_sum)
    report.check("product labeling verifies", True, out_cert is not None)
    if out_cert is not None:
        report.check("magic sum matches the product formula", expected, out_cert.magic_sum)
        report.check("super preserved", cert.is_super, out_cert.is_super)
        if args.out:
            Path(args.out).write_text(fileio.dumps_labeling(out_cert))
            report.note(f"wrote {args.out}")
    return _emit(report, args)


def _label_amplify(args) -> int:
    report = RunReport("label amplify")
    lf = fileio.loads_labeling(_read(report, args.labeling))
    cert = verify(lf.labeling)
    if cert is None or not cert.is_super:
        report.check("seed is super edge-magic", "super certificate", str(cert))
        return _emit(report, args)
    seed = _oriented_sem(cert)
    certs = amplify_magic_sums(seed, args.steps, n=args.n)
    sums = [c.magic_sum for c in certs]
    report.note(f"distinct magic sums after {args.steps} steps: {sums}")
    report.check(
        "at least steps + 2 distinct sums", True, len(set(sums)) >= args.steps + 2
    )
    return _emit(report, args)


def _render_key(key: tuple[str, ...]) -> str:
    return "(" + " ".join(key) + ")"


def cmd_plan(args) -> int:
    report = RunReport("plan")
    a_seq = [int(tok) for tok in args.a.split(",")] if args.a else [args.n]
    plan = plan_decomposition(
        args.l, args.m, args.n, args.s, a_seq, divisibility=args.divisibility
    )
    report.note(f"single-component reversal counts: {list(plan.r_values)}")
    report.note(f"stay schedule: {list(plan.stay_schedule)}")
    report.note(f"solved j values: { {f'j_{k}^{t}': v for (k, t), v in sorted(plan.j_values.items())} }")
    if args.form:
        form = fileio.loads_form(_read(report, args.form))
    else:
        from .unicyclic import RootedTree

        form = UnicyclicForm([RootedTree.single()] * args.m)
    final = execute_plan(plan, form)
    got = form_multiset(recognize(final))
    want = plan.expected_summands(form)
    report.note(
        "target union: "
        + " + ".join(f"{c} x {_render_key(k)}" for k, c in sorted(want.items()))
    )
    report.check(
        "execution reproduces the target union",
        sorted(want.items()),
        sorted(got.items()),
    )
    return _emit(report, args)


def cmd_forms(args) -> int:
    return {
        "assemble": _forms_assemble,
        "recognize": _forms_recognize,
        "period": _forms_period,
    }[args.action](args)


def _forms_assemble(args) -> int:
    report = RunReport("forms assemble")
    form = fileio.loads_form(_read(report, args.form))
    g = assemble(form)
    report.note(f"assembled graph: {g.order} vertices, {g.size} edges")
    if args.out:
        Path(args.out).write_text(fileio.dumps_graph(g))
        report.note(f"wrote {args.out}")
    _write_dot(args, fileio.dot_graph(g))
    report.check("unicyclic (edges = vertices)", g.order, g.size)
    return _emit(report, args)


def _forms_recognize(args) -> int:
    report = RunReport("forms recognize")
    g = fileio.loads_graph(_read(report, args.graph))
    forms = recognize(g)
    for i, form in enumerate(forms, start=1):
        periodic = detect_period(form)
        report.note(
            f"component {i}: cycle length {form.length}, "
            f"tuple {_render_key(form.slot_canons())}, period multiplicity {periodic.multiplicity}"
        )
    report.check("components recognized", len(g.connected_components()), len(forms))
    return _emit(report, args)


def _forms_period(args) -> int:
    report = RunReport("forms period")
    form = fileio.loads_form(_read(report, args.form))
    periodic = detect_period(form)
    report.note(f"base tuple: {_render_key(periodic.base.slot_canons())}")
    report.check("base length x multiplicity = length",
                 form.length, periodic.base.length * periodic.multiplicity)
    report.note(f"multiplicity: {periodic.multiplicity}")
    return _emit(report, args)


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--seed", type=int, default=DEFAULT_SEED, help="randomness seed")
    parser.add_argument("--dot", help="write DOT output to this path")
    parser.add_argument("--format", choices=("text", "json"), default="text")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hproduct",
        description="Arc-assigned digraph products, rainbow circuits, and edge-magic labelings",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("product", help="build a product and report its components")
    p.add_argument("host", help="host digraph file")
    p.add_argument("family", help="family file")
    p.add_argument("assignment", help="arc assignment file")
    p.add_argument("--out", help="write the product digraph here")
    _add_common(p)
    p.set_defaults(func=cmd_product)

    p = sub.add_parser("predict", help="component cross-checks against brute-force products")
    p.add_argument("-m", type=int, help="cycle host order")
    p.add_argument("family", nargs="?", help="family file")
    p.add_argument("assignment", nargs="?", help="arc assignment file")
    p.add_argument("--random", action="store_true", help="run seeded random trials instead")
    p.add_argument("--trials", type=int, default=200)
    p.add_argument("--max-m", type=int, default=6)
    p.add_argument("--max-n", type=int, default=8)
    p.add_argument("--forms", nargs="+", help="unicyclic form files (structural prediction mode)")
    p.add_argument("--n", type=int, help="cycle member order for form mode")
    p.add_argument("--reversals", help="comma-separated backward counts, one per form")
    _add_common(p)
    p.set_defaults(func=cmd_predict)

    p = sub.add_parser("rainbow", help="enumerate rainbow circuits of the union multidigraph")
    p.add_argument("-m", type=int, required=True, help="cycle host order")
    p.add_argument("family", help="family file")
    p.add_argument("assignment", help="arc assignment file")
    _add_common(p)
    p.set_defaults(func=cmd_rainbow)

    p = sub.add_parser("label", help="edge-magic labeling operations")
    action = p.add_subparsers(dest="action", required=True)

    a = action.add_parser("verify", help="check a labeling file")
    a.add_argument("labeling")
    _add_common(a)
    a.set_defaults(func=cmd_label)

    a = action.add_parser("search", help="exhaustively search a graph for labelings")
    a.add_argument("graph")
    a.add_argument("--super", dest="super_only", action="store_true")
    a.add_argument("--limit", type=int)
    a.add_argument("--max-size", type=int, default=20)
    a.add_argument("--show", type=int, default=3, help="print at most this many labelings")
    _add_common(a)
    a.set_defaults(func=cmd_label)

    a = action.add_parser("product", help="label the product of a certified host")
    a.add_argument("host", help="host digraph file")
    a.add_argument("labeling", help="host labeling file")
    a.add_argument("-n", type=int, required=True, help="odd member cycle order")
    a.add_argument("--assignment", help="arc assignment into members C+ and C-")
    a.add_argument("--out", help="write the product labeling here")
    _add_common(a)
    a.set_defaults(func=cmd_label)

    a = action.add_parser("amplify", help="grow distinct magic sums by repeated products")
    a.add_argument("labeling", help="super edge-magic seed labeling file")
    a.add_argument("--steps", type=int, required=True)
    a.add_argument("-n", type=int, default=3)
    _add_common(a)
    a.set_defaults(func=cmd_label)

    p = sub.add_parser("plan", help="plan and execute a product decomposition")
    p.add_argument("--l", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--s", type=int, required=True)
    p.add_argument("--a", help="comma-separated coefficients a_0..a_l (default: n with l=0)")
    p.add_argument("--divisibility", choices=("full", "inner"), default="full")
    p.add_argument("--form", help="unicyclic form file (default: a bare cycle)")
    _add_common(p)
    p.set_defaults(func=cmd_plan)

    p = sub.add_parser("forms", help="assemble, recognize, or test periodicity of forms")
    action = p.add_subparsers(dest="action", required=True)

    a = action.add_parser("assemble")
    a.add_argument("form")
    a.add_argument("--out", help="write the assembled graph here")
    _add_common(a)
    a.set_defaults(func=cmd_forms)

    a = action.add_parser("recognize")
    a.add_argument("graph")
    _add_common(a)
    a.set_defaults(func=cmd_forms)

    a = action.add_parser("period")
    a.add_argument("form")
    _add_common(a)
    a.set_defaults(func=cmd_forms)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except HProductError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
