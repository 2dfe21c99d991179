"""Command-line front end.

Thin client over the HTTP service: every subcommand builds a request
model, posts it (in-process by default, to --server if given), and
renders the response as headered CSV with LF line endings and 12
significant digits.  SNR is accepted in dB here and converted exactly
once, server-side, so library code never sees decibels.

Exit codes: 0 success, 2 argument errors, 3 validation failure
(validate found |z| > 5), 4 I/O errors, 1 anything else.
"""

import argparse
import asyncio
import sys

import httpx

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_VALIDATION = 3
EXIT_IO = 4

_METHODS = ("sum", "cd", "lb", "lowsnr", "mc")
_MAX_SEED = 2**64


def _parse_pairs(text: str) -> list[tuple[int, int]]:
    pairs = []
    for chunk in text.split(","):
        try:
            mt_s, mr_s = chunk.split(":")
            mt, mr = int(mt_s), int(mr_s)
        except ValueError:
            raise argparse.ArgumentTypeError(
                f"bad pair {chunk!r}, expected mt:mr with integer entries"
            ) from None
        if mt < 1 or mr < 1:
            raise argparse.ArgumentTypeError(f"pair {chunk!r} must be positive")
        pairs.append((mt, mr))
    if not pairs:
        raise argparse.ArgumentTypeError("need at least one mt:mr pair")
    return pairs


def _parse_snr(text: str) -> tuple[float, float, float]:
    """Either 'start:stop:step' or a single dB value."""
    fields = text.split(":")
    try:
        if len(fields) == 1:
            value = float(fields[0])
            return value, value, 1.0
        if len(fields) == 3:
            start, stop, step = (float(f) for f in fields)
            if step <= 0:
                raise argparse.ArgumentTypeError(
                    f"snr step must be > 0, got {step}"
                )
            if stop < start:
                raise argparse.ArgumentTypeError(
                    f"snr stop {stop} is below start {start}"
                )
            return start, stop, step
    except argparse.ArgumentTypeError:
        raise
    except ValueError:
        pass
    raise argparse.ArgumentTypeError(
        f"bad snr range {text!r}, expected start:stop:step or a single value"
    )


def _parse_methods(text: str) -> list[str]:
    methods = [m.strip() for m in text.split(",") if m.strip()]
    if not methods:
        raise argparse.ArgumentTypeError("need at least one method")
    for m in methods:
        if m not in _METHODS:
            raise argparse.ArgumentTypeError(
                f"unknown method {m!r}, choose from {', '.join(_METHODS)}"
            )
    return methods


def _parse_seed(text: str) -> int:
    try:
        seed = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"seed must be an integer, got {text!r}")
    if not (0 <= seed < _MAX_SEED):
        raise argparse.ArgumentTypeError("seed must fit in an unsigned 64-bit int")
    return seed


def _fmt(value: float) -> str:
    return f"{value:.12g}"


def _post(path: str, payload: dict, server: str | None):
    """POST and return (status_code, parsed body)."""
    if server is not None:
        with httpx.Client(base_url=server, timeout=None) as client:
            resp = client.post(path, json=payload)
            return resp.status_code, resp.json()

    async def go():
        from .service.app import app

        transport = httpx.ASGITransport(app=app)
        async with httpx.AsyncClient(
            transport=transport, base_url="http://service", timeout=None
        ) as client:
            resp = await client.post(path, json=payload)
            return resp.status_code, resp.json()

    return asyncio.run(go())


def _error_text(body) -> str:
    detail = body.get("detail") if isinstance(body, dict) else None
    if isinstance(detail, str):
        return detail
    if isinstance(detail, list):
        parts = []
        for item in detail:
            loc = ".".join(str(p) for p in item.get("loc", []) if p != "body")
            msg = item.get("msg", "invalid value")
            parts.append(f"{loc}: {msg}" if loc else msg)
        return "; ".join(parts)
    return "request rejected"


def _write_out(text: str, out: str) -> int:
    if out == "-":
        sys.stdout.write(text)
        return EXIT_OK
    try:
        with open(out, "w", newline="") as fh:
            fh.write(text)
    except OSError as exc:
        print(f"error: cannot write {out!r}: {exc}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK


def _request(path: str, payload: dict, server: str | None):
    """Run the POST, mapping transport and validation failures to exits.

    Returns (body, None) on success or (None, exit_code) on failure.
    """
    try:
        status, body = _post(path, payload, server)
    except httpx.HTTPError as exc:
        print(f"error: request failed: {exc}", file=sys.stderr)
        return None, EXIT_IO
    if status == 422:
        print(f"error: {_error_text(body)}", file=sys.stderr)
        return None, EXIT_USAGE
    if status != 200:
        print(f"error: server returned {status}: {_error_text(body)}", file=sys.stderr)
        return None, 1
    return body, None


def _snr_payload(args) -> dict:
    start, stop, step = args.snr_db
    return {"snr_db_start": start, "snr_db_stop": stop, "snr_db_step": step}


def cmd_sweep(args) -> int:
    payload = {
        "m": args.m,
        "pairs": list(args.pairs),
        "methods": args.methods,
        "mc_samples": args.samples,
        "seed": args.seed,
        "nodes": args.nodes,
        **_snr_payload(args),
    }
    body, err = _request("/sweep", payload, args.server)
    if err is not None:
        return err
    columns = body["method_columns"]
    lines = ["m,m_t,m_r,snr_db," + ",".join(columns)]
    for row in body["rows"]:
        cells = [str(row["m"]), str(row["m_t"]), str(row["m_r"]), _fmt(row["snr_db"])]
        cells += [_fmt(row["values"][c]) for c in columns]
        lines.append(",".join(cells))
    return _write_out("\n".join(lines) + "\n", args.out)


def cmd_bench(args) -> int:
    payload = {
        "m": args.m,
        "pairs": list(args.pairs),
        "reps": args.reps,
        "nodes": args.nodes,
        **_snr_payload(args),
    }
    body, err = _request("/bench", payload, args.server)
    if err is not None:
        return err
    lines = ["m,m_t,m_r,form,n_evals,per_eval_seconds,checksum,speedup"]
    for row in body["rows"]:
        lines.append(
            ",".join(
                [
                    str(row["m"]),
                    str(row["m_t"]),
                    str(row["m_r"]),
                    row["form"],
                    str(row["n_evals"]),
                    _fmt(row["per_eval_seconds"]),
                    _fmt(row["checksum"]),
                    _fmt(row["speedup"]),
                ]
            )
        )
    return _write_out("\n".join(lines) + "\n", args.out)


def cmd_validate(args) -> int:
    payload = {
        "m": args.m,
        "pairs": list(args.pairs),
        "mc_samples": args.samples,
        "seed": args.seed,
        "nodes": args.nodes,
        **_snr_payload(args),
    }
    body, err = _request("/validate", payload, args.server)
    if err is not None:
        return err
    lines = ["m,m_t,m_r,snr_db,analytic,mc_mean,mc_std_error,z"]
    for row in body["rows"]:
        lines.append(
            ",".join(
                [
                    str(row["m"]),
                    str(row["m_t"]),
                    str(row["m_r"]),
                    _fmt(row["snr_db"]),
                    _fmt(row["analytic"]),
                    _fmt(row["mc_mean"]),
                    _fmt(row["mc_std_error"]),
                    _fmt(row["z"]),
                ]
            )
        )
    code = _write_out("\n".join(lines) + "\n", args.out)
    if code != EXIT_OK:
        return code
    verdict = "PASS" if body["passed"] else "FAIL"
    print(
        f"validate: max |z| = {body['max_abs_z']:.3f} (limit 5.0): {verdict}",
        file=sys.stderr,
    )
    return EXIT_OK if body["passed"] else EXIT_VALIDATION


def cmd_density(args) -> int:
    if len(args.pairs) != 1:
        print("error: density takes exactly one mt:mr pair", file=sys.stderr)
        return EXIT_USAGE
    mt, mr = args.pairs[0]
    payload = {
        "m": args.m,
        "m_t": mt,
        "m_r": mr,
        "n_samples": args.samples,
        "seed": args.seed,
        "n_bins": args.bins,
    }
    body, err = _request("/density", payload, args.server)
    if err is not None:
        return err
    edges = body["bin_edges"]
    lines = ["bin_lo,bin_hi,empirical,expected"]
    for i in range(len(edges) - 1):
        lines.append(
            ",".join(
                [
                    _fmt(edges[i]),
                    _fmt(edges[i + 1]),
                    _fmt(body["empirical"][i]),
                    _fmt(body["expected"][i]),
                ]
            )
        )
    code = _write_out("\n".join(lines) + "\n", args.out)
    if code != EXIT_OK:
        return code
    print(
        "density: max |empirical - expected| = "
        f"{body['max_abs_deviation']:.3e} mass "
        f"({body['max_sigma_deviation']:.2f} sigma), "
        f"model normalization = {body['normalization']:.12f} "
        f"over {body['n_eigenvalues']} eigenvalues",
        file=sys.stderr,
    )
    return EXIT_OK


def cmd_serve(args) -> int:
    import uvicorn

    from .service.app import app

    uvicorn.run(app, host=args.host, port=args.port)
    return EXIT_OK


def _add_common(sub, snr_default: str) -> None:
    sub.add_argument("--m", type=int, required=True, help="total modes/cores")
    sub.add_argument(
        "--pairs",
        type=_parse_pairs,
        required=True,
        help="comma-separated mt:mr pairs, e.g. 4:4,8:8",
    )
    sub.add_argument(
        "--snr-db",
        type=_parse_snr,
        default=_parse_snr(snr_default),
        help=f"start:stop:step or a single dB value (default {snr_default})",
    )
    sub.add_argument("--out", default="-", help="output path, - for stdout")
    sub.add_argument(
        "--nodes",
        type=int,
        default=None,
        help="quadrature node override (default: resolution-matched, 64 up to 20 dB)",
    )
    sub.add_argument("--server", default=None, help="remote service URL (default: in-process)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="jacobi-mimo",
        description="Ergodic capacity of Haar-unitary (Jacobi) MIMO channels.",
    )
    subs = parser.add_subparsers(dest="command", required=True)

    sweep = subs.add_parser("sweep", help="emit capacity curves as CSV")
    _add_common(sweep, "0:30:1")
    sweep.add_argument(
        "--methods",
        type=_parse_methods,
        default=["cd"],
        help="comma-separated subset of sum,cd,lb,lowsnr,mc (default cd)",
    )
    sweep.add_argument("--samples", type=int, default=100_000, help="mc sample count")
    sweep.add_argument("--seed", type=_parse_seed, default=0)
    sweep.set_defaults(func=cmd_sweep)

    bench = subs.add_parser("bench", help="time sum-form vs cd-form evaluation")
    _add_common(bench, "0:30:1")
    bench.add_argument("--reps", type=int, default=3, help="timing repetitions")
    bench.set_defaults(func=cmd_bench)

    validate = subs.add_parser("validate", help="check analytic curves against Monte Carlo")
    _add_common(validate, "0:30:15")
    validate.add_argument("--samples", type=int, default=100_000)
    validate.add_argument("--seed", type=_parse_seed, default=0)
    validate.set_defaults(func=cmd_validate)

    density = subs.add_parser(
        "density", help="sampled eigenvalue histogram vs the model density"
    )
    _add_common(density, "0")
    density.add_argument("--samples", type=int, default=20_000)
    density.add_argument("--seed", type=_parse_seed, default=0)
    density.add_argument("--bins", type=int, default=20)
    density.set_defaults(func=cmd_density)

    serve = subs.add_parser("serve", help="run the HTTP service")
    serve.add_argument("--host", default="127.0.0.1")
    serve.add_argument("--port", type=int, default=8000)
    serve.set_defaults(func=cmd_serve)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
