import sys

from abelsq.cli import main

sys.exit(main())
