import sys

from fuzzylc.cli import main

sys.exit(main())
