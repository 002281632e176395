"""Command-line front end for batch use of the engine.

Verbs: ``validate``, ``match``, ``apply``, ``normalize``, ``export``,
``fixtures``, ``serve``.  Data goes to stdout as newline-terminated canonical
JSON (sorted keys, compact separators) so outputs are diff-stable; counts and
progress notes go to stderr.  Exit codes: 0 on success, 1 on a domain failure
(with a machine-readable ``{"error": ...}`` document on stdout), 2 on flag
misuse.
"""

import functools
import json
import os
import sys
from pathlib import Path

import click

from .errors import FormatError, HoportError, StepLimitReached
from .matcher import MatchOptions, find_morphisms
from .oracle import brute_force_morphisms
from .portgraph import PortGraph, validate_graph
from .rewrite import Rule, apply_with_report, enumerate_redexes
from .rewrite import normal_forms as explore_normal_forms
from .rewrite import normalize as normalize_leftmost
from .signature import PSignature
from . import fixtures as fixture_data

DEFAULT_FIXTURE_DIR = "fixtures"
FIXTURE_DIR_ENV = "HOPORT_FIXTURES"


def canonical(doc) -> str:
    return json.dumps(doc, sort_keys=True, separators=(",", ":"))


def emit(doc) -> None:
    click.echo(canonical(doc))


def note(text: str) -> None:
    click.echo(text, err=True)


def domain_errors(fn):
    """Turn any domain failure into ``{"error": ...}`` on stdout, exit 1."""

    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except HoportError as exc:
            emit({"error": exc.to_json()})
            sys.exit(1)

    return wrapper


def _load_doc(path: str) -> dict:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise FormatError(f"cannot read {path}: {exc.strerror}", path=path)
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"{path} is not valid JSON: {exc}", path=path)


def _load_signature(path: str | None) -> PSignature | None:
    return PSignature.from_json(_load_doc(path)) if path else None


def _load_graph(path: str, sig: PSignature | None) -> PortGraph:
    return PortGraph.from_json(_load_doc(path), sig)


def _load_rule(path: str, sig: PSignature | None) -> Rule:
    return Rule.from_json(_load_doc(path), sig)


def _load_rules(rule_dir: str, sig: PSignature | None) -> list[Rule]:
    root = Path(rule_dir)
    if root.is_file():
        return [_load_rule(str(root), sig)]
    if not root.is_dir():
        raise FormatError(f"{rule_dir} is neither a rule file nor a directory",
                          path=rule_dir)
    paths = sorted(p for p in root.iterdir() if p.suffix == ".json")
    rules = []
    for p in paths:
        doc = _load_doc(str(p))
        if "lhs" in doc:  # skip graphs/signatures living in the same directory
            rules.append(Rule.from_json(doc, sig))
    if not rules:
        raise FormatError(f"no rule files found under {rule_dir}",
                          path=rule_dir)
    return rules


sig_option = click.option(
    "--sig", "sig_path", type=click.Path(), default=None,
    help="Signature file for documents that do not embed one.")


@click.group()
@click.option("--seed", type=int, default=0, show_default=True,
              help="Seed for randomized strategies; the built-in strategies "
                   "are deterministic and ignore it.")
@click.pass_context
def main(ctx, seed):
    """Validate, match, rewrite and serve port-graphs."""
    ctx.ensure_object(dict)
    ctx.obj["seed"] = seed


@main.command()
@click.argument("paths", nargs=-1, required=True, type=click.Path())
@sig_option
@domain_errors
def validate(paths, sig_path):
    """Check files; print a JSON array of diagnostics (empty when clean).

    Accepts signature, graph and rule files, telling them apart by shape.
    Structural violations (unknown labels, port overflows, bad references)
    are domain failures: exit 1 with an ``{"error": ...}`` document.
    """
    sig = _load_signature(sig_path)
    diagnostics = []
    for path in paths:
        doc = _load_doc(path)
        if isinstance(doc, dict) and "lhs" in doc:
            Rule.from_json(doc, sig)  # compiling performs every rule check
        elif isinstance(doc, dict) and "edges" in doc:
            g = PortGraph.from_json(doc, sig)
            diagnostics += [{"path": path, **d.to_json()}
                            for d in validate_graph(g)]
        else:
            s = PSignature.from_json(doc)
            diagnostics += [{"path": path, **d.to_json()}
                            for d in s.validate()]
    emit(diagnostics)
    note(f"{len(paths)} file(s) checked, {len(diagnostics)} diagnostic(s)")


@main.command()
@click.option("-p", "--pattern", "pattern_path", required=True,
              type=click.Path(), help="Pattern graph file.")
@click.option("-s", "--subject", "subject_path", required=True,
              type=click.Path(), help="Subject graph file.")
@sig_option
@click.option("--oracle", is_flag=True,
              help="Use the brute-force enumerator instead of the matcher.")
@click.option("--max-solutions", type=int, default=None,
              help="Stop after this many matches.")
@domain_errors
def match(pattern_path, subject_path, sig_path, oracle, max_solutions):
    """Enumerate embeddings of a pattern in a subject graph."""
    sig = _load_signature(sig_path)
    pattern = _load_graph(pattern_path, sig)
    subject = _load_graph(subject_path, sig)
    if oracle:
        found = list(brute_force_morphisms(pattern, subject))
        if max_solutions is not None:
            found = found[:max_solutions]
    else:
        options = MatchOptions(max_solutions=max_solutions)
        found = list(find_morphisms(pattern, subject, options))
    emit([m.to_json() for m in found])
    note(f"{len(found)} match(es)")


@main.command()
@click.option("-r", "--rule", "rule_path", required=True, type=click.Path(),
              help="Rule file.")
@click.option("-g", "--graph", "graph_path", required=True, type=click.Path(),
              help="Subject graph file.")
@sig_option
@click.option("--redex", "redex_index", type=int, default=0, show_default=True,
              help="Index into the deterministic redex list.")
@domain_errors
def apply(rule_path, graph_path, sig_path, redex_index):
    """Apply one rule at the chosen redex; print the rewritten graph."""
    sig = _load_signature(sig_path)
    rule = _load_rule(rule_path, sig)
    graph = _load_graph(graph_path, sig)
    redexes = enumerate_redexes(graph, [rule])
    if not 0 <= redex_index < len(redexes):
        raise FormatError(
            f"redex index {redex_index} out of range: "
            f"{len(redexes)} redex(es) available",
            index=redex_index, available=len(redexes))
    chosen = redexes[redex_index]
    result, report = apply_with_report(graph, chosen.rule, chosen.morphism)
    emit(result.to_json())
    note(f"applied {rule.name} at redex {redex_index}: "
         f"-{len(report.removed_nodes)} +{len(report.added_nodes)} node(s)")


@main.command()
@click.option("-R", "--rules", "rules_path", required=True, type=click.Path(),
              help="A rule file, or a directory of rule files.")
@click.option("-g", "--graph", "graph_path", required=True, type=click.Path(),
              help="Subject graph file.")
@sig_option
@click.option("--strategy", type=click.Choice(["leftmost", "all"]),
              default="leftmost", show_default=True,
              help="leftmost: repeat the first redex to one normal form; "
                   "all: search every reachable normal form.")
@click.option("--max-steps", type=int, default=100, show_default=True,
              help="Step budget (leftmost) or visited-graph budget (all).")
@domain_errors
def normalize(rules_path, graph_path, sig_path, strategy, max_steps):
    """Rewrite to normal form; print the result and its derivation."""
    sig = _load_signature(sig_path)
    rules = _load_rules(rules_path, sig)
    graph = _load_graph(graph_path, sig)
    if strategy == "all":
        res = explore_normal_forms(graph, rules, max_visited=max_steps)
        emit({"normal_forms": [g.to_json(include_signature=False)
                               for g in res.graphs],
              "truncated": res.truncated})
        note(f"{len(res.graphs)} normal form(s)"
             + (" (truncated)" if res.truncated else ""))
        return
    try:
        result, derivation = normalize_leftmost(graph, rules,
                                                max_steps=max_steps)
    except StepLimitReached as exc:
        emit({"error": exc.to_json(),
              "graph": exc.graph.to_json(include_signature=False),
              "derivation": exc.derivation.to_json()})
        sys.exit(1)
    emit({"graph": result.to_json(), "derivation": derivation.to_json()})
    note(f"normal form in {len(derivation.steps)} step(s)")


@main.command()
@click.argument("path", type=click.Path())
@sig_option
@click.option("--dot", is_flag=True, help="Emit Graphviz DOT instead of JSON.")
@domain_errors
def export(path, sig_path, dot):
    """Re-emit a graph or rule file canonically; graphs also export as DOT."""
    sig = _load_signature(sig_path)
    doc = _load_doc(path)
    if isinstance(doc, dict) and "lhs" in doc:
        if dot:
            raise click.UsageError("--dot applies to graph files only")
        emit(Rule.from_json(doc, sig).to_json())
        return
    graph = PortGraph.from_json(doc, sig)
    if dot:
        click.echo(graph.to_dot())
    else:
        emit(graph.to_json())


@main.command()
@click.option("--dir", "directory", type=click.Path(), default=None,
              help=f"Output directory (default: ${FIXTURE_DIR_ENV} or "
                   f"'{DEFAULT_FIXTURE_DIR}').")
@domain_errors
def fixtures(directory):
    """Write the bundled example signature, graphs and rules as JSON files."""
    target = directory or os.environ.get(FIXTURE_DIR_ENV) or DEFAULT_FIXTURE_DIR
    names = fixture_data.write_fixtures(target)
    emit({"directory": str(target), "files": names})
    note(f"wrote {len(names)} file(s) to {target}")


@main.command()
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", default=8000, show_default=True, type=int)
def serve(host, port):
    """Run the local HTTP service for the browser explorer."""
    import uvicorn

    from .server import create_app

    note(f"serving on http://{host}:{port}")
    uvicorn.run(create_app(), host=host, port=port, log_level="warning")


if __name__ == "__main__":
    main()
