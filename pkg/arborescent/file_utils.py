"""
Copyright (C) 2020 Abraham George Smith

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
import os
import sys
import time
from datetime import datetime


def read_text(file_path, retries=3):
    """
    read a whole text file with
    retry as there may be temporary issues with a mounted network drive.
    """
    if not os.path.isfile(file_path):
        raise FileNotFoundError(f'{file_path} does not exist')
    for _ in range(retries):
        try:
            with open(file_path, 'r') as f:
                return f.read()
        except OSError as ex:
            print(f'exception reading {file_path}', file=sys.stderr)
            print(ex, file=sys.stderr)
            time.sleep(1)
    raise Exception(f'Cannot read {file_path} after {retries} retries')


def log(message, config):
    """ append a time stamped line to the run log when a log folder is set """
    log_dir = config.get('log_dir')
    if not log_dir or not os.path.isdir(log_dir):
        return
    with open(os.path.join(log_dir, config['log_file']), 'a+') as log_file:
        log_file.write(f"{datetime.now()}|{time.time()}|{message}\n")


def append_csv_row(csv_path, row):
    if not csv_path:
        return
    with open(csv_path, 'a+') as csv_file:
        csv_file.write(row)
