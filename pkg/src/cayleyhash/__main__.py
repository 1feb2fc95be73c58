import sys

from cayleyhash.cli import main

sys.exit(main())
