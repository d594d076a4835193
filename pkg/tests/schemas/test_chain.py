"""schemas.chainのテスト"""

from fractions import Fraction

import pytest
from pydantic import ValidationError

from backend.chains import PolyChain, currents_equal
from backend.torus import PeriodicChain
from schemas import ChainSchema


class TestChainSchema:
    """ChainSchemaのテスト"""

    def test_example(self):
        """例のチェインが単位線分1本か"""
        chain = ChainSchema.example().to_domain()
        assert len(chain) == 1
        assert chain.mass() == pytest.approx(1.0)

    def test_integer_and_fraction_coordinates(self):
        """整数と "p/q" が混在しても読めるか"""
        schema = ChainSchema(
            n=2, d=1, cells=[{"vertices": [[0, "1/2"], ["3/2", 1]], "coeff": "-2"}]
        )
        ((cell, coeff),) = schema.to_domain().items()
        assert cell == ((Fraction(0), Fraction(1, 2)), (Fraction(3, 2), Fraction(1)))
        assert coeff == -2

    def test_wrong_vertex_count_raises(self):
        """d+1 個でない頂点でValidationErrorが発生するか"""
        with pytest.raises(ValidationError):
            ChainSchema(n=2, d=1, cells=[{"vertices": [["0", "0"]], "coeff": "1"}])

    def test_float_coordinate_raises(self):
        """float 座標でValidationErrorが発生するか"""
        with pytest.raises(ValidationError):
            ChainSchema(n=2, d=1, cells=[{"vertices": [[0.5, 0], [1, 0]], "coeff": "1"}])

    def test_round_trip(self):
        """from_domain → JSON → to_domain で同じカレントに戻るか"""
        chain = PolyChain.from_simplices(
            2, 1, [([(0, 0), ("1/3", "2/3")], "1/2"), ([("1/3", "2/3"), (1, 0)], "1/2")]
        )
        loaded = ChainSchema.model_validate_json(ChainSchema.from_domain(chain).model_dump_json())
        assert not loaded.periodic
        assert currents_equal(loaded.to_domain(), chain)

    def test_periodic_chain(self):
        """周期的チェインは periodic=True で代表が保存されるか"""
        chain = PolyChain.from_simplices(2, 1, [([(1, 0), (2, 0)], 1)])
        schema = ChainSchema.from_domain(PeriodicChain.from_chain(chain))
        assert schema.periodic
        assert schema.to_periodic().representatives == PeriodicChain.from_chain(chain).representatives
