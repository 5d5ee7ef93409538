#
# Copyright (C) 2015 LM3FE development team
#
# This file is part of lm3fe, which is released under the terms of
# GNU GPLv3. See COPYING at top level for more information.
#

"""
LM3FE is a solver library and command line harness for large margin
multi-modal multi-task feature extraction.
"""
