import sys

from quenched_dzeta.cli import main

sys.exit(main())
