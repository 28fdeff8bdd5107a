# -*- coding: utf-8 -*-
"""Run ``python -m kitbath``."""

import sys

from kitbath.cli import main

sys.exit(main())
