#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""
Package-wide settings.

Defaults can be overridden with the ``FDALG_SETTINGS`` environment variable,
which holds either a JSON object or the path of a JSON file, e.g.::

    FDALG_SETTINGS='{"SNAP_EPS": 1e-6}' fdalg spectrum --in a.json
"""
import json
import logging
import os

from fdalg.exceptions import ConfigurationError

logger = logging.getLogger(__name__)

ENVIRONMENT_VARIABLE = 'FDALG_SETTINGS'

DEFAULT_SETTINGS = {
    'EPS_REL': 1e-9,
    'EPS_ABS': 1e-12,
    'SNAP_EPS': 1e-7,
    'POSITIVITY_SAMPLES': 200,
    'DUPLICATOR_WITNESS_SAMPLES': 1000,
    'WEDDERBURN_RETRIES': 8,
    'DEFAULT_SEED': 0,
    'LOGGING': {
        'version': 1,
        'disable_existing_loggers': False,
        'formatters': {
            'plain': {
                'format': '%(levelname)s %(name)s: %(message)s',
            },
        },
        'handlers': {
            'stderr': {
                'level': 'DEBUG',
                'class': 'logging.StreamHandler',
                'formatter': 'plain',
                'stream': 'ext://sys.stderr',
            },
        },
        'loggers': {
            'fdalg': {
                'handlers': ['stderr'],
                'level': 'WARNING',
                'propagate': False,
            },
        },
    },
}


def load_user_settings(raw=None):
    """Parse overrides from a JSON string or a path to a JSON file."""
    if raw is None:
        raw = os.environ.get(ENVIRONMENT_VARIABLE, '')
    raw = raw.strip()
    if not raw:
        return {}
    if not raw.startswith('{'):
        try:
            with open(raw) as handle:
                raw = handle.read()
        except IOError as exc:
            raise ConfigurationError(
                "Can't read %s file %r: %s" % (ENVIRONMENT_VARIABLE, raw, exc))
    try:
        overrides = json.loads(raw)
    except ValueError as exc:
        raise ConfigurationError(
            "%s is not valid JSON: %s" % (ENVIRONMENT_VARIABLE, exc))
    if not isinstance(overrides, dict):
        raise ConfigurationError(
            "%s must hold a JSON object" % ENVIRONMENT_VARIABLE)
    for key in list(overrides):
        if key not in DEFAULT_SETTINGS:
            logger.warning("ignoring unknown setting %s", key)
            del overrides[key]
    return overrides


USER_SETTINGS = DEFAULT_SETTINGS.copy()
USER_SETTINGS.update(load_user_settings())

globals().update(USER_SETTINGS)
