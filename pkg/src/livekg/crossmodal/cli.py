"""Command line for the cross-modal matcher: xmodal."""

import argparse
import json
import sys
import time
from pathlib import Path

import numpy as np

from ..ingest.raster import read_raster
from .checkpoint import load_checkpoint, save_checkpoint
from .config import ModelConfig, TrainParams
from .errors import CrossmodalError
from .index import EmbeddingIndex, build_index, match
from .patches import patchify
from .single_stream import SingleStreamModel
from .train import pretrain

_RASTER_SUFFIXES = (".pgm", ".ppm")


def _load_pairs(pairs_path: Path, images_dir: Path):
    pairs = []
    with open(pairs_path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.strip()
            if not line:
                continue
            try:
                record = json.loads(line)
                text, image_name = record["text"], record["image"]
            except (ValueError, KeyError, TypeError) as exc:
                raise SystemExit(f"{pairs_path}:{lineno}: bad pair record: {exc}")
            pairs.append((text, read_raster(images_dir / image_name)))
    return pairs


def _load_config(path: Path) -> tuple[ModelConfig, TrainParams]:
    raw = json.loads(Path(path).read_text(encoding="utf-8"))
    train_raw = raw.pop("train", {})
    raw.setdefault("vocab_size", 1)  # pretrain overrides it from the corpus
    if "loss_weights" in raw:
        raw["loss_weights"] = tuple(raw["loss_weights"])
    return ModelConfig(**raw), TrainParams(**train_raw)


def _cmd_pretrain(args) -> int:
    pairs_path = Path(args.pairs)
    images_dir = Path(args.images_dir) if args.images_dir else pairs_path.parent
    cfg, train_params = _load_config(Path(args.config))

    def log(epoch, losses):
        parts = " ".join(f"{k}={v:.4f}" for k, v in sorted(losses.items()))
        print(f"epoch {epoch + 1}/{train_params.epochs} {parts}", file=sys.stderr)

    pairs = _load_pairs(pairs_path, images_dir)
    result = pretrain(pairs, cfg, TrainParams(
        lr=train_params.lr, epochs=train_params.epochs,
        batch_size=train_params.batch_size, clip_norm=train_params.clip_norm,
        seed=train_params.seed, log=log))
    save_checkpoint(result.model, result.vocab, args.out)
    print(json.dumps({
        "pairs": len(pairs),
        "vocab": len(result.vocab),
        "final_loss": result.epoch_losses[-1]["total"],
        "checkpoint": str(args.out),
    }, ensure_ascii=False))
    return 0


def _cmd_index(args) -> int:
    model, _ = load_checkpoint(args.ckpt)
    images_dir = Path(args.images)
    paths = sorted(p for p in images_dir.iterdir() if p.suffix in _RASTER_SUFFIXES)
    items = [(p.name, read_raster(p)) for p in paths]
    index = build_index(model, items)
    index.save(args.out)
    print(json.dumps({"images": len(items), "index": str(args.out)}))
    return 0


def _cmd_match(args) -> int:
    model, vocab = load_checkpoint(args.ckpt)
    index = EmbeddingIndex.load(args.index)
    hits = match(model, vocab, args.text, index, args.k)
    print(json.dumps([{"id": item_id, "score": score} for item_id, score in hits],
                     ensure_ascii=False, indent=2))
    return 0


def _cmd_bench(args) -> int:
    model, vocab = load_checkpoint(args.ckpt)
    index = EmbeddingIndex.load(args.index)
    single = SingleStreamModel(model.cfg)
    rng = np.random.default_rng(model.cfg.seed)
    ids = np.array(vocab.encode_truncated(args.text, model.cfg.max_text_len))
    candidates = [rng.random((model.cfg.n_patches, model.cfg.patch_dim))
                  for _ in range(args.candidates)]

    model.counters.reset()
    t0 = time.perf_counter()
    match(model, vocab, args.text, index, k=min(5, len(index)))
    two_stream = time.perf_counter() - t0

    single.counters.reset()
    t0 = time.perf_counter()
    for patches in candidates:
        single.score(ids, patches)
    one_stream = time.perf_counter() - t0

    print(json.dumps({
        "candidates": args.candidates,
        "index_rows": len(index),
        "two_stream_seconds": two_stream,
        "single_stream_seconds": one_stream,
        "speedup": one_stream / two_stream if two_stream > 0 else float("inf"),
        "text_forwards": model.counters.text,
        "image_forwards": model.counters.image,
        "joint_forwards": single.counters.joint,
    }))
    return 0


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="xmodal", description="Train and query the text-image matcher.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("pretrain", help="train a model on text-image pairs")
    p.add_argument("--pairs", required=True, help="pairs.jsonl with text/image records")
    p.add_argument("--config", required=True, help="JSON model and train settings")
    p.add_argument("--images-dir", help="image directory (default: next to pairs file)")
    p.add_argument("--out", required=True, help="checkpoint path to write")
    p.set_defaults(func=_cmd_pretrain)

    p = sub.add_parser("index", help="embed a directory of images")
    p.add_argument("--ckpt", required=True)
    p.add_argument("--images", required=True, help="directory of .pgm/.ppm files")
    p.add_argument("--out", required=True, help="index path to write")
    p.set_defaults(func=_cmd_index)

    p = sub.add_parser("match", help="query an index with a text")
    p.add_argument("--ckpt", required=True)
    p.add_argument("--index", required=True)
    p.add_argument("--text", required=True)
    p.add_argument("--k", type=int, default=5)
    p.set_defaults(func=_cmd_match)

    p = sub.add_parser("bench", help="compare match() with joint rescoring")
    p.add_argument("--ckpt", required=True)
    p.add_argument("--index", required=True)
    p.add_argument("--candidates", type=int, default=100)
    p.add_argument("--text", default="测试查询")
    p.set_defaults(func=_cmd_bench)

    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (CrossmodalError, OSError) as exc:
        print(f"xmodal: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
