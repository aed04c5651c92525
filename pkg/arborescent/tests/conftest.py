import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

# pylint: disable=C0413
from tangle import parse_link  # noqa: E402

Q_TEXT = 'D([[2],[-2]]*[2]*([1/3]+[1/2]))'
Q_DELTA = 't^6 - 3*t^5 + 7*t^4 - 9*t^3 + 7*t^2 - 3*t + 1'


@pytest.fixture
def q_spec():
    return parse_link(Q_TEXT)


@pytest.fixture
def config_file(tmp_path):
    path = tmp_path / 'config.yaml'
    path.write_text(f"log_dir: {tmp_path / 'logs'}\n"
                    f"results_csv: {tmp_path / 'results.csv'}\n"
                    "oracle_max_crossings: 20\n"
                    "corpus_workers: 1\n")
    return str(path)
