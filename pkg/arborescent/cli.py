"""
Command line interface: parse, compute, compare, export and run the
regression corpus

This program is free software: you can redistribute it and/or modify
it under the terms of the GNU General Public License as published by
the Free Software Foundation, either version 3 of the License, or
(at your option) any later version.

This program is distributed in the hope that it will be useful,
but WITHOUT ANY WARRANTY; without even the implied warranty of
MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE.  See the
GNU General Public License for more details.
You should have received a copy of the GNU General Public License
along with this program.  If not, see <https://www.gnu.org/licenses/>.
"""

# pylint: disable=C0111,R0913
import argparse
import json
import multiprocessing
import sys
import time
from dataclasses import dataclass, field
from itertools import combinations
from typing import Dict, List, Optional

import yaml

from polyring import (LaurentPoly, NotDivisible, ZeroDenominator, dotequal,
                      parse_poly, to_text)
from tangle import (ClosureKind, TangleSyntaxError, crossing_count, fraction,
                    parse_link, summands)
from diagram import (PRESETS, OrientationError, PDFormatError, link_diagram,
                     parse_pd, pd_code)
from engine import TransferMismatch, alexander, alexander_diagram
from oracle import alexander_fox, alexander_q, bareiss_det, cofactor_det
from closedform import (PRESET_FOR, ClassificationError, MontesinosSpec,
                        PretzelSpec, classify_pretzel, closed_form,
                        dotequal_relabeled, kinoshita_terasaka,
                        kinoshita_terasaka_formula, pretzel_knot, pretzel_link,
                        three_component_family, three_component_formula)
from startup import load_config, startup_setup
from file_utils import append_csv_row, log, read_text
from metrics import (EntryResult, get_corpus_metrics, get_metrics_str,
                     get_result_csv_row, get_summary_table)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DISAGREE = 2

METHODS = ('engine', 'closed-form', 'fox', 'q-matrix')


class UsageError(Exception):
    pass


class CorpusFormatError(Exception):
    pass


class DeterminantMismatch(Exception):
    pass


class ArgumentParser(argparse.ArgumentParser):
    """ argparse with usage errors mapped to exit code 1 """

    def error(self, message):
        self.print_usage(sys.stderr)
        print(f'{self.prog}: error: {message}', file=sys.stderr)
        sys.exit(EXIT_USAGE)


@dataclass
class Report:
    source: str
    closure: Optional[str]
    components: int
    crossings: int
    results: Dict[str, LaurentPoly] = field(default_factory=dict)
    notes: List[str] = field(default_factory=list)
    classification: Optional[str] = None
    # compare up to renumbering and reversing components
    relabel: bool = False

    def same(self, a, b):
        if self.relabel and self.components > 1:
            return dotequal_relabeled(self.results[a], self.results[b])
        return dotequal(self.results[a], self.results[b])

    def verdicts(self):
        return [(a, b, self.same(a, b)) for a, b in combinations(self.results, 2)]

    @property
    def agree(self):
        return all(v for _, _, v in self.verdicts())

    def text(self, name):
        return to_text(self.results[name], nvars=self.components)

    def as_json(self):
        out = {
            'input': self.source,
            'closure': self.closure,
            'components': self.components,
            'method_results': {name: self.text(name) for name in self.results},
            'agree': self.agree,
        }
        if self.classification is not None:
            out['classification'] = self.classification
        return out


def parse_orientation(text):
    """ None for auto, a list of +-1 bits or a preset name """
    if text in (None, '', 'auto'):
        return None
    key, sep, value = text.partition('=')
    if sep and key == 'bits':
        try:
            return [int(b) for b in value.split(',')]
        except ValueError:
            raise UsageError(f'cannot read direction bits {value!r}') from None
    if sep and key == 'preset':
        if value not in PRESETS:
            raise UsageError(f'unknown preset {value!r}, expected one of {", ".join(PRESETS)}')
        return value
    raise UsageError(f'cannot read orientation {text!r}, expected auto, bits=... or preset=...')


def parse_int_list(text):
    try:
        return [int(v) for v in text.split(',')]
    except ValueError:
        raise UsageError(f'cannot read integer list {text!r}') from None


def parse_fraction_list(text):
    out = []
    for item in text.split(','):
        p, sep, q = item.strip().partition('/')
        try:
            out.append((int(p), int(q) if sep else 1))
        except ValueError:
            raise UsageError(f'cannot read fraction {item!r}') from None
    return out


def montesinos_of(spec):
    """ MontesinosSpec when spec is D(R1*...*Rr) with rational Ri and r >= 3 """
    if spec.closure != ClosureKind.D:
        return None
    parts = summands(spec.expr)
    if len(parts) < 3:
        return None
    fractions = [fraction(p) for p in parts]
    if any(f is None for f in fractions):
        return None
    try:
        return MontesinosSpec(tuple(fractions))
    except ClassificationError:
        return None


def checked_det(limit):
    def det(matrix):
        value = bareiss_det(matrix)
        if matrix.shape[0] <= limit and cofactor_det(matrix) != value:
            raise DeterminantMismatch(f'Bareiss and cofactor determinants differ on a '
                                      f'{matrix.shape[0]}x{matrix.shape[1]} minor')
        return value
    return det


def run_method(name, ld, fastpath, check, config, notes):
    if name == 'engine':
        try:
            return alexander_diagram(ld, fastpath, check)
        except ZeroDenominator as ex:
            notes.append(f'engine: {ex}, falling back to the Fox oracle')
            name = 'fox'
    det = checked_det(config['cofactor_max_size']) if check else bareiss_det
    if name == 'fox':
        return alexander_fox(ld, det=det)
    return alexander_q(ld, det=det)


def run_compute(text, method, policy, fastpath, check, config):
    spec = parse_link(text)
    wanted = METHODS if method == 'all' else (method,)
    notes = []
    mont = montesinos_of(spec) if 'closed-form' in wanted else None
    if method == 'closed-form' and mont is None:
        raise UsageError('closed-form needs D(R1*...*Rr) with at least 3 rational tangles')
    if mont is not None and policy is not None:
        if method == 'closed-form':
            raise UsageError('the closed forms fix their own orientation, drop --orient')
        notes.append('closed-form skipped: it fixes its own orientation')
        mont = None
    classification, closed = None, None
    if mont is not None:
        cls, closed, preset, normal = closed_form(mont)
        classification = f'{cls.kind} n0={cls.n0} n1={cls.n1}'
        spec, policy = normal.link_spec(), preset
        notes.append(f'{cls.kind}: every method uses the {preset} orientation')
    ld = link_diagram(spec, policy)
    report = Report(text, spec.closure.value, ld.n_components, len(ld.crossings),
                    notes=notes, classification=classification)
    for name in wanted:
        if name == 'closed-form':
            if closed is not None:
                report.results[name] = closed
            continue
        if (method == 'all' and name in ('fox', 'q-matrix')
                and len(ld.crossings) > config['oracle_max_crossings']):
            notes.append(f'{name} skipped: {len(ld.crossings)} crossings is above '
                         f'oracle_max_crossings')
            continue
        report.results[name] = run_method(name, ld, fastpath, check, config, notes)
    return report


def run_from_pd(path, method, check, config):
    if method in ('engine', 'closed-form'):
        raise UsageError(f'{method} needs a tangle expression, a PD diagram supports '
                         f'fox and q-matrix only')
    ld = parse_pd(read_text(path, config['read_retries']))
    report = Report(path, None, ld.n_components, len(ld.crossings))
    for name in (('fox', 'q-matrix') if method == 'all' else (method,)):
        report.results[name] = run_method(name, ld, True, check, config, report.notes)
    return report


def print_report(report, as_json):
    for note in report.notes:
        print(note, file=sys.stderr)
    if as_json:
        print(json.dumps(report.as_json(), indent=2))
        return
    if report.classification is not None:
        print(report.classification)
    if len(report.results) == 1:
        print(report.text(next(iter(report.results))))
        return
    for name in report.results:
        print(f'{name}: {report.text(name)}')
    for a, b, same in report.verdicts():
        print(f'{a} ~ {b}: {"yes" if same else "no"}')


def finish(report, args, config):
    print_report(report, args.json)
    log(f'{args.command} {report.source} agree={report.agree}'
        f'{get_metrics_str({"components": report.components, "crossings": report.crossings})}',
        config)
    return EXIT_OK if report.agree else EXIT_DISAGREE


def cmd_compute(args, config):
    fastpath = config['fastpath'] and not args.no_fastpath
    if args.from_pd:
        if args.expression:
            raise UsageError('give either an expression or --from-pd, not both')
        if parse_orientation(args.orient) is not None:
            raise UsageError('a PD diagram keeps its own orientation')
        report = run_from_pd(args.from_pd, args.method, args.check, config)
    elif args.expression:
        report = run_compute(args.expression, args.method, parse_orientation(args.orient),
                             fastpath, args.check, config)
    else:
        raise UsageError('an expression or --from-pd is required')
    return finish(report, args, config)


def closed_report(source, cls, poly, normal, check, relabel):
    report = Report(source, ClosureKind.D.value, cls.components,
                    crossing_count(normal.link_spec().expr),
                    classification=f'{cls.kind} n0={cls.n0} n1={cls.n1}',
                    relabel=relabel)
    report.results['closed-form'] = poly
    if check:
        report.results['engine'] = alexander(normal.link_spec(), policy=PRESET_FOR[cls.kind])
    return report


def cmd_pretzel(args, config):
    spec = PretzelSpec(tuple(parse_int_list(args.twists)))
    cls = classify_pretzel(spec)
    poly = pretzel_knot(spec) if cls.components == 1 else pretzel_link(spec)
    normal = spec.montesinos().normalized()
    report = closed_report(args.twists, cls, poly, normal, args.check, True)
    return finish(report, args, config)


def cmd_montesinos(args, config):
    spec = MontesinosSpec(tuple(parse_fraction_list(args.fractions)))
    cls, poly, _, normal = closed_form(spec)
    report = closed_report(args.fractions, cls, poly, normal, args.check, False)
    return finish(report, args, config)


def cmd_family(args, config):
    params = [args.h] + ([args.n1, args.n2] if args.family == 'kt' else [args.k])
    if not all(params):
        raise UsageError('the twist parameters of a family must be non-zero')
    if args.family == 'kt':
        if (args.n1 + args.n2) % 2 == 0:
            raise UsageError('the Kinoshita-Terasaka family is a knot only for n1 + n2 odd')
        spec = kinoshita_terasaka(args.n1, args.n2, args.h)
        formula = kinoshita_terasaka_formula(args.n1, args.n2)
        source = f'kt {args.n1} {args.n2} {args.h}'
    else:
        spec = three_component_family(args.k, args.h)
        formula = three_component_formula(args.k, args.h)
        source = f'three {args.k} {args.h}'
    ld = link_diagram(spec)
    report = Report(source, spec.closure.value, ld.n_components, len(ld.crossings),
                    relabel=True)
    report.results['engine'] = alexander_diagram(ld, config['fastpath'])
    report.results['formula'] = formula
    return finish(report, args, config)


def cmd_pd(args, config):
    ld = link_diagram(parse_link(args.expression), parse_orientation(args.orient))
    print(pd_code(ld), end='')
    log(f'pd {args.expression} crossings {len(ld.crossings)}', config)
    return EXIT_OK


@dataclass(frozen=True)
class CorpusEntry:
    name: str
    expression: str
    expected: Optional[str]
    source: Optional[str]
    line: int


def parse_corpus(text):
    """ name | expression | expected-or-"-" | source, '#' starts a comment """
    entries = []
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split('#', 1)[0].strip()
        if not line:
            continue
        fields = [f.strip() for f in line.split('|')]
        if len(fields) != 4:
            raise CorpusFormatError(f'line {number}: expected 4 fields separated by |, '
                                    f'got {len(fields)}')
        name, expression, expected, source = fields
        if not name or not expression:
            raise CorpusFormatError(f'line {number}: empty name or expression')
        try:
            parse_link(expression)
        except TangleSyntaxError as ex:
            raise CorpusFormatError(f'line {number}: {ex}') from None
        if expected in ('', '-'):
            expected = None
        else:
            try:
                parse_poly(expected)
            except ValueError as ex:
                raise CorpusFormatError(f'line {number}: {ex}') from None
            if source in ('', '-'):
                raise CorpusFormatError(f'line {number}: expected value without a source tag')
        entries.append(CorpusEntry(name, expression, expected,
                                   None if source in ('', '-') else source, number))
    return entries


def matches_expected(report, expected):
    value = next(iter(report.results.values()))
    if report.components > 1:
        return dotequal_relabeled(value, expected)
    return dotequal(value, expected)


def run_entry(job):
    entry, config = job
    start = time.time()
    result = EntryResult(entry.name, 'error')
    try:
        report = run_compute(entry.expression, 'all', None, config['fastpath'], False, config)
    except Exception as ex: # pylint: disable=broad-except
        result.message = f'{type(ex).__name__}: {ex}'
    else:
        result.components, result.crossings = report.components, report.crossings
        result.method_results = {name: report.text(name) for name in report.results}
        result.expected = entry.expected
        if not report.agree:
            result.status, result.message = 'disagree', 'methods disagree'
        elif entry.expected is not None and not matches_expected(report, parse_poly(entry.expected)):
            result.status, result.message = 'fail', f'expected {entry.expected}'
        else:
            result.status = 'pass'
    result.seconds = time.time() - start
    return result


def cmd_corpus(args, config):
    entries = parse_corpus(read_text(args.path, config['read_retries']))
    jobs = [(entry, config) for entry in entries]
    workers = args.workers or config['corpus_workers']
    if workers > 1 and len(jobs) > 1:
        with multiprocessing.Pool(workers) as pool:
            results = pool.map(run_entry, jobs)
    else:
        results = [run_entry(job) for job in jobs]
    if results:
        print(get_summary_table(results))
    metrics = get_corpus_metrics(results)
    print(f"{metrics['entries']} entries, {metrics['passed']} passed, "
          f"{metrics['failed']} failed, {metrics['disagreed']} disagreed, "
          f"{metrics['errors']} errors")
    for r in results:
        append_csv_row(config.get('results_csv'), get_result_csv_row(r))
    log(f'corpus {args.path}{get_metrics_str(metrics)}', config)
    return EXIT_OK if metrics['passed'] == metrics['entries'] else EXIT_DISAGREE


def build_parser():
    parser = ArgumentParser(prog='arborescent',
                            description='Multi-variable Alexander polynomials of arborescent links')
    parser.add_argument('--config_file', type=str, default=None,
                        help='path to a yaml config file, the packaged config.yaml by default')
    sub = parser.add_subparsers(dest='command', required=True)

    compute = sub.add_parser('compute', help='Alexander polynomial of a link expression')
    compute.add_argument('expression', nargs='?', help='for example "D([1/3]*[2]*[-2])"')
    compute.add_argument('--method', choices=METHODS + ('all',), default='engine')
    compute.add_argument('--orient', default='auto',
                         help='auto, bits=<+-1 list> or preset=<name>')
    compute.add_argument('--from-pd', dest='from_pd', default=None,
                         help='read a PD file instead of an expression')
    compute.add_argument('--no-fastpath', dest='no_fastpath', action='store_true',
                         help='evaluate rational tangles crossing by crossing')
    compute.add_argument('--check', action='store_true',
                         help='verify transfer matrices and small determinants')
    compute.add_argument('--json', action='store_true')

    for name, arg, example in (('pretzel', 'twists', '3,-5,7'),
                               ('montesinos', 'fractions', '1/2,1/3,1/7')):
        cmd = sub.add_parser(name, help=f'closed form for a {name} link')
        cmd.add_argument(arg, help=f'comma separated, for example {example}; '
                                   f'put -- before a list starting with a minus sign')
        cmd.add_argument('--check', action='store_true', help='compare with the engine')
        cmd.add_argument('--json', action='store_true')

    family = sub.add_parser('family', help='engine against the displayed family formulas')
    kinds = family.add_subparsers(dest='family', required=True)
    kt = kinds.add_parser('kt', help='generalized Kinoshita-Terasaka knots')
    kt.add_argument('n1', type=int)
    kt.add_argument('n2', type=int)
    kt.add_argument('h', type=int)
    kt.add_argument('--json', action='store_true')
    three = kinds.add_parser('three', help='the 3-component family')
    three.add_argument('k', type=int)
    three.add_argument('h', type=int)
    three.add_argument('--json', action='store_true')

    corpus = sub.add_parser('corpus', help='run a regression corpus')
    corpus.add_argument('path')
    corpus.add_argument('--workers', type=int, default=None)

    pd = sub.add_parser('pd', help='export a PD code')
    pd.add_argument('expression')
    pd.add_argument('--orient', default='auto')
    return parser


HANDLERS = {
    'compute': cmd_compute,
    'pretzel': cmd_pretzel,
    'montesinos': cmd_montesinos,
    'family': cmd_family,
    'corpus': cmd_corpus,
    'pd': cmd_pd,
}

INPUT_ERRORS = (UsageError, CorpusFormatError, TangleSyntaxError, ClassificationError,
                OrientationError, PDFormatError, FileNotFoundError, ValueError,
                yaml.YAMLError)

CHECK_ERRORS = (TransferMismatch, DeterminantMismatch, NotDivisible)


def main(argv=None):
    args = build_parser().parse_args(argv)
    arguments = vars(args)
    try:
        config = startup_setup(load_config(args.config_file))
    except Exception as ex: # pylint: disable=broad-except
        print(f'error: {ex}', file=sys.stderr)
        return EXIT_USAGE
    config = {**config, **arguments}
    try:
        return HANDLERS[args.command](args, config)
    except INPUT_ERRORS as ex:
        print(f'error: {ex}', file=sys.stderr)
        log(f'{args.command} input error {ex}', config)
        return EXIT_USAGE
    except CHECK_ERRORS as ex:
        print(f'check failed: {ex}', file=sys.stderr)
        log(f'{args.command} check failed {ex}', config)
        return EXIT_DISAGREE
