#!/usr/bin/env python3
# Fredkin Lab - 本地运行入口
"""
未安装包时直接运行 CLI

用法:
    python scripts/run_lab.py gap-scan --n 2..8
    python scripts/run_lab.py verify --only defect

.env 中可设置 FREDKIN_LAB_CACHE（枚举缓存目录）。
"""

import os
import sys

# 添加项目根目录
sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from dotenv import load_dotenv
load_dotenv()

from cli.main import main

if __name__ == "__main__":
    sys.exit(main())
