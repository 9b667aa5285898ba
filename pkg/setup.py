# -*- coding: utf-8 -*-

from setuptools import setup

if __name__ == "__main__":
    setup()
