import sys

from inertia_lab.cli import main

sys.exit(main())
