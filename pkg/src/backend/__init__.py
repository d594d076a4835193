"""計算層 (グラスマン測度・多面体チェイン・トーラス・構成・エネルギー)"""
