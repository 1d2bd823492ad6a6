# -*- coding: utf-8 -*-
"""
Fractional Sturm-Liouville spectrum toolkit.
"""
