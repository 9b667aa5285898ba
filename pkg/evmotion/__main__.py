# -*- coding: utf-8 -*-

from evmotion.app.cli import main

if __name__ == "__main__":
    exit(main())
