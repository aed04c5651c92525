"""
Load the yaml settings, resolve their paths and create the log folder
on startup if required

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
import yaml

DEFAULT_CONFIG_FILE = os.path.join(os.path.dirname(os.path.abspath(__file__)), 'config.yaml')

DEFAULTS = {
    'log_dir': None,
    'log_file': 'alexander_log.txt',
    'results_csv': None,
    'oracle_max_crossings': 20,
    'cofactor_max_size': 7,
    'fastpath': True,
    'corpus_workers': 1,
    'read_retries': 3,
}

# values that name a file or folder relative to the config file
PATH_KEYS = ['log_dir', 'results_csv']


def fix_config_paths(config_dir, old_config):
    """ get paths relative to the folder holding the config file """
    new_config = {}
    for k, v in old_config.items():
        if k in PATH_KEYS and isinstance(v, str):
            v = v.replace('\\', '/')
            new_config[k] = os.path.join(config_dir, os.path.normpath(os.path.expanduser(v)))
        else:
            new_config[k] = v
    return new_config


def load_config(config_file=None):
    """
    1. Start from the defaults.
    2. Overlay the yaml file if one is given or the packaged one exists.
    3. Resolve relative paths against the yaml file's folder.
    """
    config = dict(DEFAULTS)
    if config_file is None and os.path.isfile(DEFAULT_CONFIG_FILE):
        config_file = DEFAULT_CONFIG_FILE
    if config_file is None:
        return config
    with open(config_file, 'r') as f:
        loaded = yaml.safe_load(f) or {}
    if not isinstance(loaded, dict):
        raise Exception(f'{config_file} must contain a mapping of settings')
    unknown = set(loaded) - set(DEFAULTS)
    if unknown:
        raise Exception(f'Unknown settings in {config_file}: {sorted(unknown)}')
    config.update(loaded)
    return fix_config_paths(os.path.dirname(os.path.abspath(config_file)), config)


def startup_setup(config):
    """ If the log folder is configured and doesn't exist then create it. """
    log_dir = config.get('log_dir')
    if log_dir and not os.path.isdir(log_dir):
        print('Creating', log_dir, file=sys.stderr)
        os.makedirs(log_dir)
    return config
