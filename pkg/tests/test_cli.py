import json

from rootgame.cli import main, play
from rootgame.game import WinMode, initial_position


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_grass_nonvanishing_example(capsys):
    code, out, _ = run(capsys, "grass-nonvanishing", "--sigma", "1010101", "--mu", "1001011",
                       "--nu", "0100111", "--N", "3", "--json")
    data = json.loads(out)
    assert code == 0
    assert data["grga"] == "won" and data["number"] >= 1 and data["agree"] is True


def test_lr_example(capsys):
    code, out, _ = run(capsys, "lr", "--lambda", "1,2,3", "--mu", "4,4,5", "--nu", "6,6,7", "--json")
    assert code == 0
    data = json.loads(out)
    assert data["lr"] == data["pictures"] == 1


def test_flag_trivial(capsys):
    code, out, _ = run(capsys, "flag-nonvanishing", "21", "12", "--n", "2", "--json")
    data = json.loads(out)
    assert code == 0
    assert data["verdict"]["status"] == "winnable" and data["oracle"] == 1


def test_usage_errors(capsys):
    assert run(capsys, "flag-nonvanishing", "21", "123")[0] == 1
    assert run(capsys, "flag-nonvanishing", "2x")[0] == 1
    assert run(capsys, "grass-nonvanishing", "--sigma", "10", "--mu", "100", "--nu", "01")[0] == 1
    assert run(capsys, "nonsense")[0] == 1
    assert run(capsys, "verify", "--only", "99")[0] == 1


def test_budget_exit_code(capsys):
    code, out, _ = run(capsys, "grass-nonvanishing", "--sigma", "1010101", "--mu", "1001011",
                       "--nu", "0100111", "--N", "3", "--solver", "--budget", "2")
    assert code == 2


def test_certificate_round_trip(tmp_path, capsys):
    cert = tmp_path / "c.json"
    code, _, _ = run(capsys, "flag-nonvanishing", "1243", "1243", "4213", "--certificate", str(cert))
    assert code == 0 and cert.exists()
    assert run(capsys, "verify", "1243", "1243", "4213", "--certificate", str(cert))[0] == 0
    assert run(capsys, "verify", "1243", "1243", "1243", "--certificate", str(cert))[0] == 3


def test_pictures_and_trace(capsys):
    code, out, _ = run(capsys, "pictures", "--lambda", "1,2,3", "--outer", "6,6,7", "--inner", "4,4,5",
                       "--list", "--json")
    assert code == 0 and json.loads(out)["count"] == 1
    code, out, _ = run(capsys, "grga-trace", "--sigma", "1010101", "--mu", "1001011",
                       "--nu", "0100111", "--N", "3", "--json")
    data = json.loads(out)
    assert code == 0 and data["won"] and len(data["panels"]) == 7


def test_render(capsys, tmp_path):
    code, out, _ = run(capsys, "render", "213", "132", "321")
    assert code == 0 and "13" in out
    pos_file = tmp_path / "pos.json"
    pos_file.write_text(json.dumps(initial_position([(2, 1, 3), (2, 3, 1)]).to_json()))
    code, out, _ = run(capsys, "render", "--position", str(pos_file), "--datum", "--json")
    assert code == 0 and json.loads(out)["datum"]


def test_verify_quick(capsys):
    code, out, _ = run(capsys, "verify", "--only", "1,2")
    assert code == 0
    assert out.count("[PASS]") == 2


def test_play_loop():
    script = iter(["help", "moves", "move 1 1 2", "move 2 1 2", "undo", "split 1,2 1,3 2,3",
                   "split 1,2 1,3", "bogus", "quit"])
    lines = []
    pos = initial_position([(1, 3, 2), (2, 1, 3), (2, 3, 1)])
    play(pos, WinMode.EXACT, read=lambda _: next(script), write=lines.append)
    text = "\n".join(lines)
    assert "illegal" in text or "warning" in text
    assert "unknown command" in text


def test_play_detects_win():
    # (1,2) moves the 1-token from S_23 up to S_13, finishing the game
    pos = initial_position([(1, 3, 2), (1, 3, 2), (2, 1, 3)])
    script = iter(["move 1 1 2"])
    lines = []
    final = play(pos, WinMode.EXACT, read=lambda _: next(script), write=lines.append)
    assert lines[-1] == "won!"
    assert final.labels_at((1, 3)) == {1}


def test_play_eof():
    def read(_):
        raise EOFError
    pos = initial_position([(2, 1, 3)] * 3)
    assert play(pos, WinMode.EXACT, read=read, write=lambda _: None) == pos
