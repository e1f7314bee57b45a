import csv
import functools
import io
import logging
import sys
from dataclasses import replace
from typing import List, Optional

import click

from src.classify import verifiers
from src.classify.homometry import classify_pair
from src.combinatorics.diffsets import cross_difference, self_difference
from src.config import get_settings, load_settings
from src.core import Alphabet, RingSize
from src.core.codec import dumps, encode_form, encode_multiset, encode_partition, with_schema
from src.core.errors import HomometryError, VerificationError
from src.experiments import ExperimentReport, SizeProfile
from src.experiments.table1 import (
    CSV_HEADER,
    EXHAUSTIVE,
    SAMPLED,
    default_mode,
    report_to_csv_row,
    run_table1,
)
from src.cli.parsing import parse_indices, parse_partition, parse_subset
from src.cli.progress import ProgressReporter
from src.spectral.forms import autocorr_form, collision_ratios, evaluate, forms_equal

logger = logging.getLogger(__name__)

LOG_FORMAT = "[%(levelname)s] %(name)s: %(message)s"
TABLE_RANGE = range(6, 14)
THEOREMS = ["patterson", "two-alphabet", "sparse", "singletons", "forms"]


class InputError(click.ClickException):
    """Bad arguments or invalid domain values."""
    exit_code = 2


class CheckFailed(click.ClickException):
    """A cross-check or theorem verification found a disagreement."""
    exit_code = 1


def domain_errors(f):
    @functools.wraps(f)
    def wrapper(*args, **kwargs):
        try:
            return f(*args, **kwargs)
        except HomometryError as e:
            raise InputError(str(e))
        except VerificationError as e:
            raise CheckFailed(str(e))
    return wrapper


def _ring(n: int) -> RingSize:
    try:
        return RingSize(n)
    except HomometryError as e:
        raise InputError(str(e))


@click.group(help="Homometric sets and partitions on the cyclic group Z_N.")
@click.option("--verbose", is_flag=True, help="Log debug messages to stderr.")
@click.option("--settings", "settings_path", type=click.Path(dir_okay=False),
              help="Alternate settings.json.")
@click.pass_context
def cli(ctx: click.Context, verbose: bool, settings_path: Optional[str]):
    logging.basicConfig(level=logging.DEBUG if verbose else logging.WARNING,
                        format=LOG_FORMAT, stream=sys.stderr, force=True)
    try:
        ctx.obj = load_settings(settings_path) if settings_path else get_settings()
    except HomometryError as e:
        raise InputError(str(e))
    logger.debug("Settings: %s", ctx.obj)


@cli.command(help="Difference multiset of one set (A - A) or two sets (A - B). "
                  "Sets are comma lists, e.g. --set 0,1,4,7; an empty string is the empty set.")
@click.option("--n", "n", type=int, required=True, help="Ring size N.")
@click.option("--set", "sets", multiple=True, required=True, help="Subset literal; give one or two.")
@click.option("--json", "as_json", is_flag=True, help="Emit JSON.")
@domain_errors
def diffset(n: int, sets: List[str], as_json: bool):
    ring = _ring(n)
    if len(sets) > 2:
        raise InputError(f"Give one or two --set values, got {len(sets)}")
    subsets = [parse_subset(ring, text) for text in sets]
    multiset = self_difference(subsets[0]) if len(subsets) == 1 else cross_difference(*subsets)
    if as_json:
        click.echo(dumps(with_schema({
            "n": n,
            "sets": [list(s.indices()) for s in subsets],
            "multiset": encode_multiset(multiset),
            "text": str(multiset),
        })))
    else:
        click.echo(str(multiset))


@cli.command(help="Classify a pair of ordered partitions. Blocks are joined with '|', "
                  "e.g. --p \"0,1,4,7|2,6|3,5\".")
@click.option("--n", "n", type=int, required=True, help="Ring size N.")
@click.option("--p", "p_text", required=True, help="First partition literal.")
@click.option("--q", "q_text", required=True, help="Second partition literal.")
@click.option("--json", "as_json", is_flag=True, help="Emit JSON.")
@domain_errors
def classify(n: int, p_text: str, q_text: str, as_json: bool):
    ring = _ring(n)
    P, Q = parse_partition(ring, p_text), parse_partition(ring, q_text)
    taxonomy = classify_pair(P, Q)
    if as_json:
        click.echo(dumps(with_schema({
            "n": n,
            "p": encode_partition(P),
            "q": encode_partition(Q),
            **taxonomy.to_dict(),
        })))
        return
    click.echo(taxonomy.pair_class.value)
    click.echo(taxonomy.summary())
    if taxonomy.equivalence:
        click.echo(f"equivalence witness: {taxonomy.equivalence}")
    if taxonomy.pseudo_equivalence:
        click.echo(f"pseudo-equivalence witnesses: {taxonomy.pseudo_equivalence}")


@cli.command(help="Exact autocorrelation form of a partition, optionally evaluated on an alphabet "
                  "or compared with a second partition.")
@click.option("--n", "n", type=int, required=True, help="Ring size N.")
@click.option("--p", "p_text", required=True, help="Partition literal.")
@click.option("--q", "q_text", default=None, help="Second partition to compare against.")
@click.option("--alphabet", "alphabet_text", default=None, help="Letters, e.g. 1,2.5,-1.")
@domain_errors
def form(n: int, p_text: str, q_text: Optional[str], alphabet_text: Optional[str]):
    ring = _ring(n)
    P = parse_partition(ring, p_text)
    F = autocorr_form(P)
    payload = {"n": n, "k": F.k, "p": encode_partition(P), "mass": F.mass, "form": encode_form(F)}
    if alphabet_text is not None:
        try:
            letters = tuple(float(v) for v in alphabet_text.split(","))
        except ValueError:
            raise InputError(f"Cannot read letters from {alphabet_text!r}")
        payload["alphabet"] = list(letters)
        payload["autocorrelation"] = evaluate(F, Alphabet(letters)).tolist()
    if q_text is not None:
        Q = parse_partition(ring, q_text)
        G = autocorr_form(Q)
        payload["q"] = encode_partition(Q)
        payload["forms_equal"] = forms_equal(F, G)
        if F.k == 2 and G.k == 2:
            payload["collision_ratios"] = collision_ratios(F, G)
    click.echo(dumps(with_schema(payload)))


def _write_csv(reports: List[ExperimentReport]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for report in reports:
        writer.writerow(report_to_csv_row(report))
    return buffer.getvalue()


@cli.command(help="Count equivalent, pseudo-equivalent and homometric partition pairs per N.")
@click.option("--n", "n", type=click.IntRange(1, 64), default=None, help="Single ring size.")
@click.option("--all", "run_all", is_flag=True, help="Every N from 6 to 13.")
@click.option("--mode", type=click.Choice(["exhaustive", "sample"]), default=None,
              help="Default: exhaustive for N <= 7, a 300-partition sample beyond.")
@click.option("--profile", "profile_text", default=None, help="Block sizes, e.g. 4-3-3 (single N only).")
@click.option("--seed", type=int, default=None, help="Sampling seed.")
@click.option("--count", type=click.IntRange(min=1), default=None, help="Sample size.")
@click.option("--workers", type=click.IntRange(min=0), default=None, help="Processes; 0 = all cores.")
@click.option("--out", "out_path", type=click.Path(dir_okay=False, writable=True), default=None,
              help="Write to a file instead of stdout.")
@click.option("--json", "as_json", is_flag=True, help="Emit JSON instead of CSV.")
@click.option("--timing", is_flag=True, help="Include elapsed_ms in JSON output.")
@click.option("--progress", "show_progress", is_flag=True, help="Progress bar on stderr.")
@click.pass_obj
@domain_errors
def table1(settings, n, run_all, mode, profile_text, seed, count, workers, out_path, as_json, timing,
           show_progress):
    if (n is None) == (not run_all):
        raise InputError("Give exactly one of --n or --all")
    if profile_text is not None and run_all:
        raise InputError("--profile applies to a single --n")
    sizes = [n] if n is not None else list(TABLE_RANGE)
    profile = SizeProfile.parse(profile_text) if profile_text else None

    reports, failed = [], []
    for size in sizes:
        row_mode = {"exhaustive": EXHAUSTIVE, "sample": SAMPLED}.get(mode, default_mode(size))
        try:
            with ProgressReporter(enabled=show_progress) as reporter:
                reports.append(run_table1(RingSize(size), profile=profile, mode=row_mode, count=count,
                                          seed=seed, workers=workers, settings=settings,
                                          progress_callback=reporter.update))
        except HomometryError as e:
            click.echo(f"N={size}: {e}", err=True)
            failed.append(size)

    if as_json:
        text = dumps([r.to_dict(timing=timing) for r in reports]) + "\n"
    else:
        text = _write_csv(reports)
    if out_path:
        with open(out_path, "w", encoding="utf-8", newline="") as f:
            f.write(text)
    else:
        click.echo(text, nl=False)
    if failed:
        raise InputError(f"No row for N={', '.join(str(s) for s in failed)}")


@cli.command(help="Machine-check a theorem at one N. Exits 1 if any counterexample is found.")
@click.option("--theorem", type=click.Choice(THEOREMS), required=True)
@click.option("--n", "n", type=int, required=True, help="Ring size N.")
@click.option("--k", "k", type=int, default=3, show_default=True, help="Letters (sparse, forms, singletons).")
@click.option("--mode", type=click.Choice([verifiers.PATTERSON_EXHAUSTIVE, verifiers.PATTERSON_SAMPLED]),
              default=verifiers.PATTERSON_EXHAUSTIVE, show_default=True, help="Patterson only.")
@click.option("--count", type=click.IntRange(min=1), default=10_000, show_default=True,
              help="Sampled Patterson pairs.")
@click.option("--trials", type=click.IntRange(min=0), default=1000, show_default=True,
              help="Random alphabets for the two-letter check.")
@click.option("--seed", type=int, default=None, help="Random seed.")
@click.option("--budget", type=click.IntRange(min=1), default=None, help="Enumeration budget.")
@click.option("--progress", "show_progress", is_flag=True, help="Progress bar on stderr.")
@click.pass_obj
@domain_errors
def verify(settings, theorem, n, k, mode, count, trials, seed, budget, show_progress):
    ring = _ring(n)
    if budget is not None:
        settings = replace(settings, enumeration_budget=budget)
    with ProgressReporter(enabled=show_progress) as reporter:
        callback = reporter.update
        if theorem == "patterson":
            report = verifiers.verify_patterson(ring, mode=mode, count=count, seed=seed,
                                                settings=settings, progress_callback=callback)
        elif theorem == "two-alphabet":
            report = verifiers.verify_two_alphabet_theorem(ring, trials=trials, seed=seed,
                                                           settings=settings, progress_callback=callback)
        elif theorem == "sparse":
            report = verifiers.verify_sparse_theorem(ring, k, settings=settings, progress_callback=callback)
        elif theorem == "singletons":
            report = verifiers.verify_singletons_proposition(ring, k, settings=settings,
                                                             progress_callback=callback)
        else:
            report = verifiers.verify_form_homometry(ring, k, settings=settings, progress_callback=callback)
    click.echo(dumps(report.to_dict()))
    if not report.ok:
        raise CheckFailed(f"{len(report.violations)} counterexample(s) to {theorem} at N={n}")


@cli.command(help="Split the complements of two sets into PARTS blocks and list the homometric pairs.")
@click.option("--n", "n", type=int, required=True, help="Ring size N.")
@click.option("--a", "a_text", required=True, help="First set, e.g. 0,1,4,7.")
@click.option("--a-prime", "a_prime_text", required=True, help="Second set, e.g. 0,1,3,4.")
@click.option("--parts", type=click.IntRange(min=1), required=True, help="Blocks per complement.")
@click.option("--json", "as_json", is_flag=True, help="Emit JSON.")
@domain_errors
def refine(n, a_text, a_prime_text, parts, as_json):
    ring = _ring(n)
    matches = verifiers.survey_refinements(parse_subset(ring, a_text), parse_subset(ring, a_prime_text), parts)
    if as_json:
        click.echo(dumps(with_schema({
            "n": n,
            "a": parse_indices(a_text),
            "a_prime": parse_indices(a_prime_text),
            "parts": parts,
            "pairs": [{"p": encode_partition(m.p), "q": encode_partition(m.q), **m.taxonomy.to_dict()}
                      for m in matches],
        })))
        return
    for m in matches:
        click.echo(f"{m.p} vs {m.q}: {m.taxonomy.pair_class.value}")
    click.echo(f"{len(matches)} homometric pair(s)")
