import sys

from gogauto.cli import main

sys.exit(main())
