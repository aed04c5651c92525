"""
Summaries of a regression corpus run

Copyright (C) 2019, 2020 Abraham George Smith

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
from datetime import datetime
from dataclasses import dataclass, field
from typing import Dict, Optional

STATUSES = ('pass', 'fail', 'disagree', 'error')


@dataclass
class EntryResult:
    name: str
    status: str
    components: int = 0
    crossings: int = 0
    seconds: float = 0.0
    method_results: Dict[str, str] = field(default_factory=dict)
    expected: Optional[str] = None
    message: str = ''


def get_corpus_metrics(results) -> dict:
    counts = {status: 0 for status in STATUSES}
    for r in results:
        counts[r.status] += 1
    return {
        'entries': len(results),
        'passed': counts['pass'],
        'failed': counts['fail'],
        'disagreed': counts['disagree'],
        'errors': counts['error'],
        'seconds': sum(r.seconds for r in results),
    }


def get_metrics_str(all_metrics, to_use=None):
    out_str = ""
    for name, val in all_metrics.items():
        if to_use is None or name in to_use:
            if isinstance(val, float):
                out_str += f" {name} {val:.4g}"
            else:
                out_str += f" {name} {val}"
    return out_str


def get_summary_table(results):
    """ fixed width table, one row per entry in corpus order """
    width = max([len('name')] + [len(r.name) for r in results])
    lines = [f"{'name':<{width}}  {'status':<8}  {'m':>2}  {'cr':>3}  note"]
    for r in results:
        note = r.message
        if not note and r.status == 'pass':
            note = ', '.join(sorted(r.method_results))
        lines.append(f'{r.name:<{width}}  {r.status:<8}  {r.components:>2}  '
                     f'{r.crossings:>3}  {note}')
    return '\n'.join(lines)


def get_result_csv_row(result):
    now_str = datetime.now().strftime('%Y-%m-%d-%H:%M:%S')
    parts = [now_str, result.name, result.status, result.components,
             result.crossings, round(result.seconds, 4),
             ';'.join(f'{k}={v}' for k, v in sorted(result.method_results.items()))]
    return ','.join([str(p) for p in parts]) + '\n'
