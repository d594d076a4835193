#!/usr/bin/env python3
"""polyhedral-tangent-planes ランチャー

src をインポートパスに追加して CLI を起動する。

使い方:
    python main.py cycle --measure three_line_cycle --size 8
    python main.py converge --measure diagonal_filling --mode fill --sizes 3:9,4:16,5:25
    または
    uv run python main.py lp --psi sin2theta --witness
"""

import sys
from pathlib import Path

# プロジェクトルートをPythonパスに追加（インポートパス解決のため）
project_root = Path(__file__).parent
sys.path.insert(0, str(project_root / "src"))


if __name__ == "__main__":
    from cli.main import main

    sys.exit(main())
