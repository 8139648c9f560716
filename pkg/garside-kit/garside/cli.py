"""
garside/cli.py

Command-line front end. Every subcommand takes a SOURCE that is either a
file path or the name of a shipped fixture.

Exit codes: 0 success, 1 computational failure, 2 usage error.
"""

import json
import os
from functools import wraps
from typing import Any, Callable, Dict, List, Optional

import click

from fixtures import FIXTURES, load_fixture, resolve_fixture
from fixtures.verify import verify_fixtures

from .config import configure, get_logger
from .divisibility import (
    atoms,
    equal,
    left_divides,
    left_divisors,
    left_gcd,
    right_divides,
    right_divisors,
    right_gcd,
    right_lcm,
    right_mcms,
    select_backend,
)
from .errors import GarsideError, Inconclusive
from .families import (
    Submonoid,
    check_compatibility,
    close_under_right_divisors,
    close_under_right_mcm,
    delta_structure,
    is_garside_family,
    is_solid,
    smallest_garside_family,
)
from .germs import (
    GermTable,
    embedding_test,
    germ_eqir_closed,
    mon_from_germ,
    parse_germ,
    right_quotient_closed,
    subgerm_closure,
    submonoid_eqir_closed,
    validate_germ,
)
from .normal_forms import (
    Family,
    canonical_distance,
    canonical_length,
    normal_decomposition,
    symmetric_normal,
)
from .presentation import Presentation, format_word, parse_presentation
from .rc import RCSystem, delta_i, double_bijectivity, nu_map, parse_rc, structure_monoid, validate_rc
from .reversing import (
    build_theta,
    completeness_check,
    cube_check,
    left_reverse,
    right_reverse,
    theta_star,
)

logger = get_logger(__name__)

FAMILY_HELP = 'family: "auto" for the smallest Garside family, or words separated by ";"'


# ---------------------------------------------------------------------------
# plumbing


def _read_source(source: str, kind: str) -> Any:
    if os.path.exists(source):
        with open(source, encoding="utf-8") as handle:
            text = handle.read()
        name = os.path.splitext(os.path.basename(source))[0]
        if kind == "presentation":
            return parse_presentation(text, name=name)
        if kind == "germ":
            return parse_germ(text, name=name)
        return parse_rc(text, name=name)
    resolved = resolve_fixture(source)
    if not resolved or FIXTURES[resolved[0]].kind != kind:
        raise click.BadParameter(
            f"{source!r} is neither a file nor a {kind} fixture", param_hint="SOURCE"
        )
    return load_fixture(resolved[0])


def load_presentation(source: str) -> Presentation:
    return _read_source(source, "presentation")


def load_germ(source: str) -> GermTable:
    return _read_source(source, "germ")


def load_rc(source: str) -> RCSystem:
    return _read_source(source, "rc")


def _backend(p: Presentation):
    return select_backend(p, allow_bounded=True)


def _family(b, spec: str) -> Family:
    if spec == "auto":
        return smallest_garside_family(b)
    return Family.from_text(b, spec)


def _labels(text: str) -> List[str]:
    return [c.strip() for c in text.replace(",", ";").split(";") if c.strip()]


def emit(text: str, data: Any) -> None:
    """Print text, or data as JSON when --json is on."""
    ctx = click.get_current_context()
    if ctx.find_root().obj.get("json"):
        click.echo(json.dumps(data, sort_keys=True, ensure_ascii=False, indent=2))
    else:
        click.echo(text)


def handle_errors(f: Callable) -> Callable:
    """
    Decorator turning toolkit errors into diagnostics and exit codes.

    GarsideError subclasses carry their own exit code (1 for computational
    failures, 2 for malformed input).
    """

    @wraps(f)
    def decorated_function(*args, **kwargs):
        try:
            return f(*args, **kwargs)
        except GarsideError as exc:
            click.echo(f"ERROR: {exc}", err=True)
            click.get_current_context().exit(exc.exit_code)

    return decorated_function


def _yes(flag: bool) -> str:
    return "yes" if flag else "no"


# ---------------------------------------------------------------------------
# root group


@click.group()
@click.option("--max-steps", type=click.IntRange(min=1), default=None, help="reversing step budget")
@click.option("--max-length", type=click.IntRange(min=1), default=None, help="longest reversing configuration")
@click.option("--json", "as_json", is_flag=True, help="machine-readable output")
@click.option("--trace", is_flag=True, help="print every reversing step")
@click.pass_context
def cli(ctx: click.Context, max_steps: Optional[int], max_length: Optional[int], as_json: bool, trace: bool):
    """Garside-theoretic computations on presentations, germs and RC-systems."""
    ctx.ensure_object(dict)
    ctx.obj["json"] = as_json
    ctx.obj["trace"] = trace
    configure(max_steps=max_steps, max_length=max_length)


# ---------------------------------------------------------------------------
# presentations


@cli.command()
@click.argument("source")
@handle_errors
def parse(source: str):
    """Parse a presentation and print it back in canonical form."""
    p = load_presentation(source)
    emit(
        p.serialize().rstrip("\n"),
        {
            "generators": list(p.generator_names),
            "invertible": sorted(p.invertible_names),
            "relations": [str(r) for r in p.relations],
        },
    )


@cli.command()
@click.argument("source")
@handle_errors
def classify(source: str):
    """Report the structural flags of a presentation."""
    report = load_presentation(source).classification
    data = report.to_dict()
    emit("\n".join(f"{key}: {_yes(value)}" for key, value in sorted(data.items())), data)


@cli.command()
@click.argument("source")
@click.argument("word")
@click.option("--left", is_flag=True, help="left reversing instead of right reversing")
@click.option("--strategy", type=click.Choice(["leftmost", "rightmost"]), default="leftmost")
@handle_errors
def reverse(source: str, word: str, left: bool, strategy: str):
    """Reverse a signed word such as "a^-1 b"."""
    p = load_presentation(source)
    trace = click.get_current_context().find_root().obj.get("trace")
    engine = left_reverse if left else right_reverse
    outcome = engine(p, p.signed(word), strategy=strategy, trace=trace)
    if trace and not click.get_current_context().find_root().obj.get("json"):
        for step in outcome.trace:
            step_data = step.to_dict()
            click.echo(
                f"  {step_data['position']}: {step_data['pairReversed']} -> {step_data['replacement']}",
                err=True,
            )
    text = str(outcome.result) if outcome.terminated else outcome.status.value
    emit(text, outcome.to_dict())
    if outcome.status.value == "Diverged":
        click.echo(f"ERROR: reversing diverged: {outcome.reason}", err=True)
        click.get_current_context().exit(1)


@cli.command()
@click.argument("source")
@click.argument("u", required=False)
@click.argument("v", required=False)
@handle_errors
def theta(source: str, u: Optional[str], v: Optional[str]):
    """Print the syntactic right-complement, or theta*(U, V) when both are given."""
    p = load_presentation(source)
    if u is None or v is None:
        table = build_theta(p)
        data = table.to_dict()
        emit("\n".join(f"{pair}: {value}" for pair, value in data.items()), data)
        return
    result = theta_star(p, p.word(u), p.word(v))
    text = "undefined" if result is None else format_word(result)
    emit(text, {"u": u, "v": v, "theta": None if result is None else format_word(result)})


@cli.command()
@click.argument("source")
@click.argument("u")
@click.argument("v")
@click.argument("w")
@handle_errors
def cube(source: str, u: str, v: str, w: str):
    """Check the cube condition on the triple (U, V, W)."""
    p = load_presentation(source)
    verdict = cube_check(p, p.word(u), p.word(v), p.word(w))
    text = "holds" if verdict.holds else "fails"
    if verdict.witness is not None:
        text += ": " + " vs ".join(format_word(x) for x in verdict.witness)
    emit(text, verdict.to_dict())


@cli.command()
@click.argument("source")
@handle_errors
def complete(source: str):
    """Decide whether right reversing is complete."""
    verdict = completeness_check(load_presentation(source))
    emit(verdict.status, verdict.to_dict())
    if verdict.status == "Unknown":
        raise Inconclusive("completeness could not be decided")


@cli.command()
@click.argument("source")
@click.argument("u")
@click.argument("v")
@handle_errors
def eq(source: str, u: str, v: str):
    """Decide whether two positive words are equal in the monoid."""
    p = load_presentation(source)
    b = _backend(p)
    result = equal(b, p.word(u), p.word(v))
    emit(_yes(result), {"equal": result, "backend": b.kind.value})


@cli.command()
@click.argument("source")
@click.argument("word")
@click.argument("other", required=False)
@click.option("--right", is_flag=True, help="right-divisibility instead of left-divisibility")
@click.option("--count", is_flag=True, help="print only the number of divisors")
@handle_errors
def div(source: str, word: str, other: Optional[str], right: bool, count: bool):
    """
    List the divisors of WORD, or decide whether WORD divides OTHER.
    """
    p = load_presentation(source)
    b = _backend(p)
    if other is not None:
        test = right_divides if right else left_divides
        result = test(b, p.word(word), p.word(other))
        emit(_yes(result), {"divides": result})
        return
    divisors = (right_divisors if right else left_divisors)(b, p.word(word))
    names = [str(d) for d in divisors]
    emit(str(len(names)) if count else "\n".join(names), len(names) if count else names)


@cli.command()
@click.argument("source")
@click.argument("u")
@click.argument("v")
@handle_errors
def lcm(source: str, u: str, v: str):
    """Right-lcm of U and V."""
    p = load_presentation(source)
    result = right_lcm(_backend(p), p.word(u), p.word(v))
    text = "none" if result is None else str(result)
    emit(text, {"lcm": None if result is None else str(result)})


@cli.command()
@click.argument("source")
@click.argument("u")
@click.argument("v")
@click.option("--right", is_flag=True, help="greatest common right-divisor")
@click.option("--multiple", default=None, help="a common left-multiple of U and V (right gcd only)")
@handle_errors
def gcd(source: str, u: str, v: str, right: bool, multiple: Optional[str]):
    """Greatest common left-divisor (or right-divisor) of U and V."""
    p = load_presentation(source)
    b = _backend(p)
    if right:
        h = p.word(multiple) if multiple else None
        result = right_gcd(b, p.word(u), p.word(v), common_left_multiple=h)
    else:
        result = left_gcd(b, p.word(u), p.word(v))
    text = "none" if result is None else str(result)
    emit(text, {"gcd": None if result is None else str(result)})


@cli.command()
@click.argument("source")
@click.argument("u")
@click.argument("v")
@click.option("--bound", type=click.IntRange(min=0), default=None, help="longest multiple searched")
@handle_errors
def mcm(source: str, u: str, v: str, bound: Optional[int]):
    """Minimal common right-multiples of U and V."""
    p = load_presentation(source)
    result = right_mcms(_backend(p), p.word(u), p.word(v), bound)
    names = sorted(str(m) for m in result.elements)
    emit(
        "\n".join(names) if names else "none",
        {"mcms": names, "method": result.method, "bound": result.search_bound, "capExceeded": result.cap_exceeded},
    )


@cli.command("atoms")
@click.argument("source")
@handle_errors
def atoms_command(source: str):
    """Atoms of the monoid."""
    found = sorted(str(a) for a in atoms(_backend(load_presentation(source))))
    emit("\n".join(found), found)


# ---------------------------------------------------------------------------
# normal forms


@cli.command()
@click.argument("source")
@click.argument("word")
@click.option("--family", "family_spec", default="auto", show_default=True, help=FAMILY_HELP)
@handle_errors
def nf(source: str, word: str, family_spec: str):
    """S-normal decomposition of a positive word."""
    p = load_presentation(source)
    S = _family(_backend(p), family_spec)
    path = normal_decomposition(S, p.word(word))
    emit(str(path), path.to_dict())


@cli.command()
@click.argument("source")
@click.argument("u")
@click.argument("v")
@click.option("--family", "family_spec", default="auto", show_default=True, help=FAMILY_HELP)
@handle_errors
def symnf(source: str, u: str, v: str, family_spec: str):
    """Symmetric normal decomposition of the fraction V.U^-1."""
    p = load_presentation(source)
    S = _family(_backend(p), family_spec)
    path = symmetric_normal(S, p.word(u), p.word(v))
    emit(str(path), path.to_dict())


@cli.command()
@click.argument("source")
@click.argument("word")
@click.option("--delta", required=True, help="the Garside element")
@click.option("--to", "other", default=None, help="second signed word: print the distance instead")
@handle_errors
def canlen(source: str, word: str, delta: str, other: Optional[str]):
    """Canonical length of a signed word with respect to a Garside element."""
    p = load_presentation(source)
    D = delta_structure(_backend(p), p.word(delta))
    if other is None:
        value = canonical_length(D, p.signed(word))
    else:
        value = canonical_distance(D, p.signed(word), p.signed(other))
    emit(str(value), {"delta": str(D.delta), "value": value})


# ---------------------------------------------------------------------------
# Garside families


@cli.group()
def family():
    """Garside families: smallest, recognition and closures."""


@family.command("smallest")
@click.argument("source")
@click.option("--count", is_flag=True, help="print only the number of elements")
@click.option("--bound", type=click.IntRange(min=0), default=None, help="longest divisor searched")
@handle_errors
def family_smallest(source: str, count: bool, bound: Optional[int]):
    """The smallest Garside family (atoms and 1 closed under right-mcm and right-divisor)."""
    S = smallest_garside_family(_backend(load_presentation(source)), bound)
    names = S.to_dict()
    emit(str(len(names)) if count else "\n".join(names), len(names) if count else names)


@family.command("check")
@click.argument("source")
@click.argument("members")
@click.option("--within", default=None, help="generators of a submonoid, separated by ';'")
@handle_errors
def family_check(source: str, members: str, within: Optional[str]):
    """Decide whether MEMBERS (words separated by ';') is a Garside family."""
    p = load_presentation(source)
    b = _backend(p)
    N = Submonoid(b, [p.word(g) for g in _labels(within)]) if within else None
    verdict = is_garside_family(b, Family.from_text(b, members), within=N)
    lines = ["garside" if verdict.is_garside else "not garside"] + list(verdict.reasons)
    emit("\n".join(lines), verdict.to_dict())


@family.command("close")
@click.argument("source")
@click.argument("members")
@click.option("--mcm", "under_mcm", is_flag=True, help="close under right-mcm as well")
@click.option("--bound", type=click.IntRange(min=0), default=None, help="longest divisor searched")
@handle_errors
def family_close(source: str, members: str, under_mcm: bool, bound: Optional[int]):
    """Close MEMBERS under right-divisor (and right-mcm with --mcm)."""
    p = load_presentation(source)
    b = _backend(p)
    words = [p.word(m) for m in _labels(members)]
    if under_mcm:
        report = close_under_right_mcm(b, words, bound, right_divisors=True)
    else:
        report = close_under_right_divisors(b, words, bound)
    emit("\n".join(report.closed.to_dict()), report.to_dict())
    if report.bound_hit:
        logger.warning("closure stopped at the state cap; the result may be incomplete")


@cli.command()
@click.argument("source")
@click.argument("members")
@handle_errors
def solid(source: str, members: str):
    """Decide whether MEMBERS is solid (contains 1 and is closed under right-divisor)."""
    p = load_presentation(source)
    b = _backend(p)
    result = is_solid(b, Family.from_text(b, members))
    emit(_yes(result), {"solid": result})


@cli.command()
@click.argument("source")
@click.argument("members")
@click.option("--sub", "sub_generators", required=True, help="generators of the submonoid, separated by ';'")
@click.option("--sharp", is_flag=True, help="use the sharp closure of MEMBERS")
@handle_errors
def compat(source: str, members: str, sub_generators: str, sharp: bool):
    """Check that a submonoid is compatible with the family MEMBERS."""
    p = load_presentation(source)
    b = _backend(p)
    S = Family.from_text(b, members)
    if sharp:
        S = S.sharp
    verdict = check_compatibility(b, [p.word(g) for g in _labels(sub_generators)], S)
    lines = [
        "compatible" if verdict.compatible else "incompatible",
        f"family size {verdict.sharp_size}, inside the submonoid {verdict.sub_sharp_size}",
    ] + list(verdict.reasons)
    emit("\n".join(lines), verdict.to_dict())


# ---------------------------------------------------------------------------
# germs


@cli.group()
def germ():
    """Germs given as partial multiplication tables."""


@germ.command("check")
@click.argument("source")
@handle_errors
def germ_check(source: str):
    """Validate the germ axioms."""
    flags = validate_germ(load_germ(source))
    data = flags.to_dict()
    lines = ["germ" if flags.is_germ else "not a germ"] + list(flags.reasons)
    emit("\n".join(lines), data)


@germ.command("mon")
@click.argument("source")
@handle_errors
def germ_mon(source: str):
    """Presentation of the monoid generated by the germ."""
    p = mon_from_germ(load_germ(source))
    emit(
        p.serialize().rstrip("\n"),
        {"generators": list(p.generator_names), "relations": [str(r) for r in p.relations]},
    )


@germ.command("embed")
@click.argument("source")
@click.option("--bound", type=click.IntRange(min=1), default=6, show_default=True)
@handle_errors
def germ_embed(source: str, bound: int):
    """Decide whether the germ embeds in its monoid."""
    verdict = embedding_test(load_germ(source), bound)
    if verdict.embeds:
        text = "embeds" if verdict.exact else f"embeds (searched to length {verdict.bound})"
    else:
        text = f"fails: {verdict.witness[0]} = {verdict.witness[1]}"
    emit(text, verdict.to_dict())


@germ.command("sub")
@click.argument("source")
@click.argument("subset")
@handle_errors
def germ_sub(source: str, subset: str):
    """Subgerm generated by SUBSET (labels separated by ';') and its closure properties."""
    t = load_germ(source)
    sub = subgerm_closure(t, _labels(subset))
    closed, witness = right_quotient_closed(t, sub.carrier)
    data: Dict[str, Any] = {
        "closure": sorted(sub.carrier),
        "rightQuotientClosed": closed,
        "eqirClosedInGerm": germ_eqir_closed(t, sub.carrier),
        "eqirClosedInMonoid": submonoid_eqir_closed(t, sub.carrier),
    }
    if witness is not None:
        data["witness"] = list(witness)
    lines = [
        "closure: " + ", ".join(data["closure"]),
        f"right-quotient closed: {_yes(closed)}",
        f"closed under invertibles in the germ: {_yes(data['eqirClosedInGerm'])}",
        f"closed under invertibles in the monoid: {_yes(data['eqirClosedInMonoid'])}",
    ]
    if witness is not None:
        s, u, su = witness
        lines.append(f"witness: {s} . {u} = {su}")
    emit("\n".join(lines), data)


# ---------------------------------------------------------------------------
# RC-systems


@cli.group()
def rc():
    """RC-systems and their structure monoids."""


@rc.command("check")
@click.argument("source")
@handle_errors
def rc_check(source: str):
    """Check the RC law, bijectivity and double bijectivity."""
    x = load_rc(source)
    report = validate_rc(x)
    data = report.to_dict()
    lines = [
        f"RC law: {_yes(report.rc_law)}",
        f"left translations bijective: {_yes(report.left_translations_bijective)}",
    ]
    if report.witness is not None:
        lines.append("witness: " + ", ".join(report.witness))
    if report.quasigroup:
        doubles = double_bijectivity(x)
        data.update(doubles.to_dict())
        lines.append(f"diagonal bijective: {_yes(doubles.diagonal_bijective)}")
        lines.append(f"pair map bijective: {_yes(doubles.pair_map_bijective)}")
    emit("\n".join(lines), data)


@rc.command("mon")
@click.argument("source")
@handle_errors
def rc_mon(source: str):
    """Presentation of the structure monoid."""
    p = structure_monoid(load_rc(source))
    emit(
        p.serialize().rstrip("\n"),
        {"generators": list(p.generator_names), "relations": [str(r) for r in p.relations]},
    )


@rc.command("delta")
@click.argument("source")
@click.argument("subset")
@handle_errors
def rc_delta(source: str, subset: str):
    """Right-lcm Delta_I of the generators in SUBSET (labels separated by ';')."""
    x = load_rc(source)
    element = delta_i(x, _labels(subset))
    emit(str(element), {"delta": str(element), "length": len(element)})


@rc.command("nu")
@click.argument("source")
@click.argument("multiset")
@click.option("--max-orders", type=click.IntRange(min=1), default=120, show_default=True)
@handle_errors
def rc_nu(source: str, multiset: str, max_orders: int):
    """Image of a multiset of labels (separated by ';') under the I-structure map."""
    x = load_rc(source)
    counts: Dict[str, int] = {}
    for label in _labels(multiset):
        if label not in x.carrier:
            raise click.BadParameter(f"{label!r} is not in the carrier", param_hint="MULTISET")
        counts[label] = counts.get(label, 0) + 1
    value = nu_map(x, counts, max_orders)
    text = str(value.element)
    if not value.order_independent:
        text += " (depends on the order)"
    emit(text, value.to_dict())


# ---------------------------------------------------------------------------
# fixture corpus


@cli.group("fixtures")
def fixtures_group():
    """The shipped fixture corpus."""


@fixtures_group.command("list")
@click.option("--kind", type=click.Choice(["presentation", "germ", "rc"]), default=None)
def fixtures_list(kind: Optional[str]):
    """List fixtures with their kind and number of expectations."""
    rows = [f for _, f in sorted(FIXTURES.items()) if kind is None or f.kind == kind]
    emit(
        "\n".join(f"{f.name:<20} {f.kind:<13} {len(f.expectations)}" for f in rows),
        [{"name": f.name, "kind": f.kind, "expectations": len(f.expectations)} for f in rows],
    )


@fixtures_group.command("verify")
@click.argument("name_filter", required=False)
def fixtures_verify(name_filter: Optional[str]):
    """Re-derive every recorded fact; exit 1 on any mismatch."""
    report = verify_fixtures(name_filter)
    lines = [r.describe() for r in report.results]
    if not report.results and name_filter:
        lines.append(f"no fixture matches {name_filter!r}")
    lines.append(f"{len(report.results)} checked, {len(report.failures)} failed")
    emit("\n".join(lines), report.to_dict())
    if not report.ok:
        click.get_current_context().exit(1)


def main() -> None:
    cli(obj={})


if __name__ == "__main__":
    main()
