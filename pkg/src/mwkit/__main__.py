import sys

from mwkit.cli import main

sys.exit(main())
