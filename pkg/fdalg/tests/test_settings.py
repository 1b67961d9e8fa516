# -*- coding: utf-8 -*-
import json
import os
import tempfile
import unittest

from fdalg import get_version, settings
from fdalg.algebra import ToleranceConfig
from fdalg.exceptions import ConfigurationError


class SettingsTest(unittest.TestCase):

    def test_defaults_published(self):
        for key in settings.DEFAULT_SETTINGS:
            self.assertTrue(hasattr(settings, key), key)
        self.assertEqual(ToleranceConfig.default().snap_eps, settings.SNAP_EPS)

    def test_empty_override(self):
        self.assertEqual(settings.load_user_settings(''), {})
        self.assertEqual(settings.load_user_settings('   '), {})

    def test_inline_json(self):
        overrides = settings.load_user_settings('{"SNAP_EPS": 1e-6, "NOPE": 1}')
        self.assertEqual(overrides, {'SNAP_EPS': 1e-6})

    def test_json_file(self):
        handle, path = tempfile.mkstemp(suffix='.json')
        self.addCleanup(os.remove, path)
        with os.fdopen(handle, 'w') as out:
            json.dump({'POSITIVITY_SAMPLES': 7}, out)
        self.assertEqual(settings.load_user_settings(path),
                         {'POSITIVITY_SAMPLES': 7})

    def test_bad_overrides(self):
        with self.assertRaises(ConfigurationError):
            settings.load_user_settings('{"SNAP_EPS": ')
        with self.assertRaises(ConfigurationError):
            settings.load_user_settings('/no/such/settings.json')
        with self.assertRaises(ConfigurationError):
            settings.load_user_settings('{"a": 1')

    def test_version(self):
        self.assertTrue(get_version().startswith('0.3'))
        self.assertEqual(get_version(short=True), '0.3')
