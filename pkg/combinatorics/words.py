# Fredkin Lab - 路径字
"""
路径字与字母表

包含:
- Step / PathWord / HeightProfile: 带颜色的上/下/平步序列
- Alphabet: 局部符号表（按 token 字典序编号）
- 解析/序列化、高度、面积、峰、栈匹配

文本格式: s=1 时紧凑书写 "uudd"；s>1 时空格分隔 "u1 u2 d2 d1"。
"""

from dataclasses import dataclass
from enum import Enum
from functools import cached_property
from typing import Iterable, Optional, Sequence

from common.errors import InvalidPathError

MAX_COLORS = 9


class Direction(str, Enum):
    """步方向"""
    UP = "u"
    DOWN = "d"
    FLAT = "0"


class PathKind(str, Enum):
    """路径类型"""
    DYCK = "dyck"
    MOTZKIN = "motzkin"
    LATTICE = "lattice"


DEFECT_TOKEN = "x"


@dataclass(frozen=True, order=True)
class Step:
    """单步

    Attributes:
        direction: 方向
        color: 颜色 1..s；平步为 0
    """
    direction: Direction
    color: int = 1

    def __post_init__(self) -> None:
        if self.direction is Direction.FLAT:
            if self.color != 0:
                raise InvalidPathError("平步不带颜色", color=self.color)
        elif not 1 <= self.color <= MAX_COLORS:
            raise InvalidPathError("颜色越界", color=self.color, max_colors=MAX_COLORS)

    @property
    def delta(self) -> int:
        """高度增量"""
        if self.direction is Direction.UP:
            return 1
        if self.direction is Direction.DOWN:
            return -1
        return 0

    @property
    def token(self) -> str:
        """带颜色 token，如 u1 / d2 / 0"""
        if self.direction is Direction.FLAT:
            return Direction.FLAT.value
        return f"{self.direction.value}{self.color}"

    def recolored(self, color: int) -> "Step":
        return Step(self.direction, color)


UP = Step(Direction.UP)
DOWN = Step(Direction.DOWN)
FLAT = Step(Direction.FLAT, 0)


@dataclass(frozen=True)
class HeightProfile:
    """高度序列 y_0..y_L（y_0 = 0）"""
    heights: tuple[int, ...]

    def __post_init__(self) -> None:
        if not self.heights or self.heights[0] != 0:
            raise InvalidPathError("高度序列必须从 0 开始")
        for a, b in zip(self.heights, self.heights[1:]):
            if abs(b - a) > 1:
                raise InvalidPathError("相邻高度差超过 1", left=a, right=b)

    @property
    def final(self) -> int:
        return self.heights[-1]

    @property
    def minimum(self) -> int:
        return min(self.heights)

    def __len__(self) -> int:
        return len(self.heights)


@dataclass(frozen=True)
class PathWord:
    """路径字

    Attributes:
        steps: 步序列
        kind: 路径类型（dyck/motzkin/lattice）
    """
    steps: tuple[Step, ...]
    kind: PathKind = PathKind.DYCK

    def __post_init__(self) -> None:
        object.__setattr__(self, "kind", PathKind(self.kind))
        object.__setattr__(self, "steps", tuple(self.steps))
        _validate(self.steps, self.kind)

    def __len__(self) -> int:
        return len(self.steps)

    def __str__(self) -> str:
        return format_word(self)

    @property
    def tokens(self) -> tuple[str, ...]:
        return tuple(step.token for step in self.steps)

    @property
    def max_color(self) -> int:
        return max((step.color for step in self.steps), default=1)

    @cached_property
    def profile(self) -> HeightProfile:
        return height_profile(self.steps)

    def replace(self, steps: Sequence[Step]) -> "PathWord":
        """同类型新字（重新校验）"""
        return PathWord(tuple(steps), self.kind)


def _validate(steps: Sequence[Step], kind: PathKind) -> None:
    """校验步序列满足路径类型约束"""
    height = 0
    stack: list[int] = []
    for i, step in enumerate(steps, start=1):
        if step.direction is Direction.FLAT and kind is not PathKind.MOTZKIN:
            raise InvalidPathError("平步只允许出现在 Motzkin 路径", position=i)
        height += step.delta

        if kind is PathKind.LATTICE:
            continue
        if height < 0:
            raise InvalidPathError("前缀高度为负", position=i, kind=kind.value)
        if step.direction is Direction.UP:
            stack.append(step.color)
        elif step.direction is Direction.DOWN:
            partner = stack.pop()
            if partner != step.color:
                raise InvalidPathError(
                    "下步与匹配的上步颜色不同", position=i, up=partner, down=step.color
                )

    if height != 0:
        raise InvalidPathError("终点高度不为 0", final=height, kind=kind.value)


# ============================================
# 字母表
# ============================================

@dataclass(frozen=True)
class Alphabet:
    """局部符号表

    符号按 token 字典序编号: "0" < d1..ds < u1..us < "x"。
    因此以站点 1 为最高位的 d 进制整数码顺序即字典序。

    Attributes:
        colors: 颜色数 s
        flat: 是否含平步（Motzkin）
        defect: 是否含缺陷符号 x
    """
    colors: int
    flat: bool = False
    defect: bool = False

    def __post_init__(self) -> None:
        if not 1 <= self.colors <= MAX_COLORS:
            raise InvalidPathError("颜色数越界", colors=self.colors, max_colors=MAX_COLORS)

    @cached_property
    def tokens(self) -> tuple[str, ...]:
        tokens: list[str] = []
        if self.flat:
            tokens.append(Direction.FLAT.value)
        tokens += [f"d{k}" for k in range(1, self.colors + 1)]
        tokens += [f"u{k}" for k in range(1, self.colors + 1)]
        if self.defect:
            tokens.append(DEFECT_TOKEN)
        return tuple(tokens)

    @property
    def size(self) -> int:
        return len(self.tokens)

    @cached_property
    def index(self) -> dict[str, int]:
        return {token: i for i, token in enumerate(self.tokens)}

    @cached_property
    def deltas(self) -> tuple[int, ...]:
        """每个符号的高度增量（x 记作下步）"""
        table = {"0": 0, "u": 1, "d": -1, DEFECT_TOKEN: -1}
        return tuple(table[token[0]] for token in self.tokens)

    @cached_property
    def directions(self) -> tuple[str, ...]:
        return tuple(token[0] for token in self.tokens)

    @cached_property
    def symbol_colors(self) -> tuple[int, ...]:
        return tuple(int(token[1:]) if len(token) > 1 else 0 for token in self.tokens)

    def symbol(self, token: str) -> int:
        """token → 符号编号（s=1 时接受无颜色 token）"""
        if token in ("u", "d"):
            token = f"{token}1"
        try:
            return self.index[token]
        except KeyError:
            raise InvalidPathError("字母表中没有该符号", token=token, tokens=self.tokens) from None

    def step_symbol(self, step: Step) -> int:
        return self.symbol(step.token)

    def pattern_value(self, tokens: Sequence[str]) -> int:
        """多站点模式的整数值（首个 token 为最高位）"""
        value = 0
        for token in tokens:
            value = value * self.size + self.symbol(token)
        return value

    def encode(self, steps: Sequence[Step]) -> int:
        return self.pattern_value([step.token for step in steps])

    def decode(self, code: int, length: int) -> tuple[str, ...]:
        """整数码 → token 序列"""
        tokens = []
        for _ in range(length):
            code, digit = divmod(code, self.size)
            tokens.append(self.tokens[digit])
        return tuple(reversed(tokens))


def alphabet_for(kind: PathKind, colors: int) -> Alphabet:
    """路径类型对应的字母表"""
    kind = PathKind(kind)
    if kind is PathKind.LATTICE and colors != 1:
        raise InvalidPathError("格路径只支持 s=1", colors=colors)
    return Alphabet(colors, flat=kind is PathKind.MOTZKIN)


# ============================================
# 解析与序列化
# ============================================

def step_from_token(token: str) -> Step:
    """token → Step（无颜色后缀视为颜色 1）"""
    if token == Direction.FLAT.value:
        return FLAT
    direction = Direction(token[0])
    color = int(token[1:]) if len(token) > 1 else 1
    return Step(direction, color)


def parse_word(text: str, kind: PathKind | str = PathKind.DYCK) -> PathWord:
    """解析路径字

    Args:
        text: "uudd" 紧凑形式或 "u1 u2 d2 d1" token 形式
        kind: 路径类型
    """
    text = text.strip()
    tokens = text.split() if any(ch.isspace() for ch in text) else _split_compact(text)
    return PathWord(tuple(step_from_token(t) for t in tokens), PathKind(kind))


def _split_compact(text: str) -> list[str]:
    tokens: list[str] = []
    for ch in text:
        if ch.isdigit() and ch != "0" and tokens:
            tokens[-1] += ch
        else:
            tokens.append(ch)
    return tokens


def format_word(word: PathWord | Sequence[Step], colors: Optional[int] = None) -> str:
    """序列化路径字

    Args:
        word: 路径字或步序列
        colors: 颜色数 s；默认按最大颜色推断
    """
    steps = word.steps if isinstance(word, PathWord) else tuple(word)
    if colors is None:
        colors = max((step.color for step in steps), default=1)
    if colors <= 1:
        return "".join(step.direction.value for step in steps)
    return " ".join(step.token for step in steps)


def format_tokens(tokens: Iterable[str], colors: int) -> str:
    """token 序列 → 文本（s=1 去掉颜色后缀）"""
    tokens = list(tokens)
    if colors <= 1:
        return "".join(t[0] if t[0] in "ud" else t for t in tokens)
    return " ".join(tokens)


# ============================================
# 高度、面积、峰
# ============================================

def height_profile(word: PathWord | Sequence[Step]) -> HeightProfile:
    """高度序列 y_0..y_L"""
    steps = word.steps if isinstance(word, PathWord) else word
    heights = [0]
    for step in steps:
        heights.append(heights[-1] + step.delta)
    return HeightProfile(tuple(heights))


def area(word: PathWord) -> int:
    """面积 Σ_{i=0}^{L} y_i

    一次交换移动改变面积 0 或 2，重新着色不改变面积。
    """
    if word.kind is PathKind.LATTICE:
        raise InvalidPathError("格路径没有非负面积定义", kind=word.kind.value)
    return sum(word.profile.heights)


def peaks(word: PathWord | Sequence[Step]) -> list[int]:
    """峰位置（1 起）: 第 i 步为上、第 i+1 步为下"""
    steps = word.steps if isinstance(word, PathWord) else word
    return [
        i
        for i in range(1, len(steps))
        if steps[i - 1].direction is Direction.UP and steps[i].direction is Direction.DOWN
    ]


def matching(word: PathWord | Sequence[Step]) -> list[Optional[int]]:
    """栈匹配: 每步的配对位置（1 起），未匹配为 None"""
    steps = word.steps if isinstance(word, PathWord) else word
    partner: list[Optional[int]] = [None] * len(steps)
    stack: list[int] = []
    for i, step in enumerate(steps):
        if step.direction is Direction.UP:
            stack.append(i)
        elif step.direction is Direction.DOWN and stack:
            j = stack.pop()
            partner[i] = j + 1
            partner[j] = i + 1
    return partner


def is_valid(steps: Sequence[Step], kind: PathKind | str) -> bool:
    """步序列是否满足类型约束"""
    try:
        _validate(steps, PathKind(kind))
    except InvalidPathError:
        return False
    return True
