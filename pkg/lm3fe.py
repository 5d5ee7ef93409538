#! /usr/bin/env python

import sys

from lm3fe.main import main

if __name__ == '__main__':
    sys.exit(main())
