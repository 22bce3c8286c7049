import sys

from fibolattice.cli import main

sys.exit(main())
