import json

import pytest

from semichu.cli import EXIT_CAP, EXIT_FAILED, EXIT_INPUT, EXIT_OK, build_parser, main


def run(capsys, *argv):
    code = main(list(argv))
    envelope = json.loads(capsys.readouterr().out)
    assert envelope['schema_version'] == '1.0'
    return code, envelope


def test_validate(capsys):
    code, envelope = run(capsys, 'validate', 'FLAT3')
    assert code == EXIT_OK
    assert envelope['status'] == 'success'
    assert envelope['result']['elements'] == 4
    assert envelope['result']['covers'] == 3


def test_validate_rejects_a_cycle(capsys, tmp_path):
    path = tmp_path / 'cycle.json'
    path.write_text(json.dumps({'name': 'c', 'elements': ['a', 'b'], 'covers': [['a', 'b'], ['b', 'a']]}))
    code, envelope = run(capsys, 'validate', str(path))
    assert code == EXIT_INPUT
    assert envelope['status'] == 'error'
    assert envelope['result']['kind'] == 'schema'


def test_malformed_json(capsys, tmp_path):
    path = tmp_path / 'broken.json'
    path.write_text('{"name": ')
    code, _ = run(capsys, 'validate', str(path))
    assert code == EXIT_INPUT


def test_analyze_bool(capsys):
    code, envelope = run(capsys, 'analyze', 'BOOL')
    result = envelope['result']
    assert code == EXIT_OK
    assert result['simplex'] is True
    assert result['distributive'] is False
    assert result['distributive_witness'] == ['Y', 'bot', 'N']
    assert result['star']['valid'] is True


def test_effects(capsys):
    code, envelope = run(capsys, 'effects', 'BOOL')
    assert code == EXIT_OK
    assert envelope['result']['count'] == 9
    assert envelope['result']['chu_axioms']['passed'] is True
    assert len(envelope['result']['max_effects']) == 4


def test_reduced_effects(capsys):
    code, envelope = run(capsys, 'effects', '--reduced', 'FLAT4*')
    assert code == EXIT_OK
    assert envelope['result']['count'] == 15


def test_tensor_count(capsys):
    code, envelope = run(capsys, 'tensor', '--kind', 'minimal', 'A=CHAIN2', 'B=CHAIN2')
    assert code == EXIT_OK
    assert envelope['result']['count'] == 5
    assert 'elements' not in envelope['result']
    code, envelope = run(capsys, 'tensor', '--kind', 'fraser', '--list', 'CHAIN2', 'CHAIN2')
    assert envelope['result']['count'] == 5
    assert len(envelope['result']['elements']) == 5


@pytest.mark.parametrize('kind, expected', [('minimal', True), ('fraser', False)])
def test_order_on_the_diagonal(capsys, kind, expected):
    code, envelope = run(capsys, 'order', '--kind', kind, 'FLAT3', 'FLAT3',
                         '--left', '[(s1,s1),(s2,s2),(s3,s3)]', '--right', '(bot,bot)')
    assert code == EXIT_OK
    assert envelope['result']['holds'] is expected


def test_malformed_pair_literal(capsys):
    code, _ = run(capsys, 'order', '--kind', 'minimal', 'FLAT3', 'FLAT3', '--left', '[(s1,s1)', '--right', '(bot,bot)')
    assert code == EXIT_INPUT


def test_unknown_element(capsys):
    code, envelope = run(capsys, 'order', '--kind', 'minimal', 'FLAT3', 'FLAT3',
                         '--left', '[(s1,zz)]', '--right', '(bot,bot)')
    assert code == EXIT_INPUT
    assert envelope['result']['kind'] == 'unknown_element'


def test_sigma_witness(capsys):
    code, envelope = run(capsys, 'witness', 'sigma', 'FLAT4star', 'FLAT4star', '--states', 'a,b,a,b')
    assert code == EXIT_OK
    assert envelope['result']['membership'] == {'maximal': True, 'nn': True, 'regular': True, 'minimal': False}


def test_witness_precondition(capsys):
    code, _ = run(capsys, 'witness', 'sigma', 'FLAT3', 'FLAT3', '--states', 's1,s2,s1,s2')
    assert code == EXIT_INPUT


def test_cap_exceeded(capsys):
    code, envelope = run(capsys, '--max-size', '3', 'tensor', '--kind', 'minimal', 'FLAT3', 'FLAT3')
    assert code == EXIT_CAP
    assert envelope['result']['kind'] == 'cap_exceeded'
    assert envelope['result']['limit'] == 3


def test_verify(capsys):
    code, envelope = run(capsys, 'verify', '--suite', 'classify', 'BOOL', 'FLAT3')
    assert code == EXIT_OK
    assert envelope['result']['passed'] is True
    assert envelope['result']['summary']['fail'] == 0


def test_export(capsys, tmp_path):
    code, envelope = run(capsys, 'export', '--format', 'dot', 'FLAT3')
    assert code == EXIT_OK
    assert envelope['result']['content'].count('->') == 3
    target = tmp_path / 'flat3.json'
    code, envelope = run(capsys, 'export', '--format', 'structured', 'FLAT3', '--output', str(target))
    assert envelope['result']['path'] == str(target)
    assert json.loads(target.read_text())['name'] == 'FLAT3'


def test_exit_codes_are_distinct():
    assert len({EXIT_OK, EXIT_FAILED, EXIT_INPUT, EXIT_CAP}) == 4


def test_parser_requires_a_command():
    with pytest.raises(SystemExit):
        build_parser().parse_args([])


def test_tensor_has_only_a_list_switch():
    args = build_parser().parse_args(['tensor', '--kind', 'minimal', 'BOOL', 'BOOL'])
    assert args.list is False
    with pytest.raises(SystemExit):
        build_parser().parse_args(['tensor', '--kind', 'minimal', '--count', 'BOOL', 'BOOL'])
