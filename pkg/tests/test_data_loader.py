import pytest

from trisparse.data_loader import DataLoader, get_data_loader
from trisparse.triangulation import parse_triangulation, write_triangulation


@pytest.fixture
def loader(data_dir):
    return DataLoader(data_dir)


def test_bundled_data_is_valid(loader):
    assert loader.list_triangulations() == ['fig1', 'nonorientable', 'rp3', 's3']
    assert loader.validate_data() == []


def test_bundled_triangulations_match_builders(loader, s3, rp3, fig1):
    assert loader.load_triangulation('s3') == s3
    assert loader.load_triangulation('rp3') == rp3
    assert loader.load_triangulation('fig1') == fig1
    assert loader.load_triangulation('s3') is loader.load_triangulation('s3')


def test_algebra_lookup(loader):
    assert loader.load_algebra('z2').name == 'z2'
    assert loader.load_algebra('klein').dim == 4
    assert loader.load_algebra('Z3', 'F7').field.name == 'F7'
    assert loader.load_algebra('S3').name == 'Q[S3]'
    with pytest.raises(ValueError):
        loader.load_algebra('A5')


def test_algebra_from_path(loader, data_dir):
    path = str(data_dir / 'groups' / 'klein.grp')
    assert loader.load_algebra(path).dim == 4


def test_validation_reports_problems(tmp_path, s3):
    empty = DataLoader(tmp_path)
    assert empty.validate_data() == ["No triangulations found"]

    (tmp_path / 'triangulations').mkdir()
    (tmp_path / 'triangulations' / 'good.tri').write_text(write_triangulation(s3))
    (tmp_path / 'triangulations' / 'bad.tri').write_text("tri 1\n0: 0/3012\n")
    (tmp_path / 'groups').mkdir()
    (tmp_path / 'groups' / 'Z2.grp').write_text("group 2\n0 1\n1 0\n")
    errors = DataLoader(tmp_path).validate_data()
    assert len(errors) == 2
    assert errors[0].startswith('Triangulation bad:')
    assert 'shadows a builtin group' in errors[1]


def test_global_loader_follows_directory(tmp_path, data_dir):
    first = get_data_loader(data_dir)
    assert get_data_loader() is first
    assert get_data_loader(tmp_path) is not first
    assert get_data_loader(data_dir).data_dir == data_dir
    assert parse_triangulation(write_triangulation(first.load_triangulation('rp3'))).size == 2
