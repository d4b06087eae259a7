import random

from mrcmask.corpus import (
    Paragraph,
    RawDocument,
    SENTENCE_DELIMITERS,
    clean_text,
    split_paragraphs,
    split_sentences,
)

from conftest import CJK_POOL


# --- independent reference cleaner (character scanner, no regex) ------------

_ENTITIES = {"&amp;": "&", "&lt;": "<", "&gt;": ">", "&quot;": '"', "&#39;": "'", "&nbsp;": " "}


def reference_clean(text: str) -> str:
    for ent, ch in _ENTITIES.items():
        text = text.replace(ent, ch)
    out = []
    i = 0
    while i < len(text):
        if text[i] == "<":
            close = text.find(">", i + 1)
            if close != -1:
                i = close + 1
                continue
        if text.startswith("[图片]", i):
            i += 4
            continue
        if text[i : i + 7].lower() == "[image]":
            i += 7
            continue
        out.append(text[i])
        i += 1
    collapsed = []
    run = []
    for ch in "".join(out):
        if ch.isspace():
            run.append(ch)
            continue
        if run:
            collapsed.append("\n" if "\n" in run else " ")
            run = []
        collapsed.append(ch)
    return "".join(collapsed).strip()


CLEAN_FIXTURE = [
    "<p>你好</p>",
    "你好  世界\n\n",
    "开始[图片]结束",
    "一段<div class='x'>正文</div>文字",
    "图片前[image]图片后",
    "多个   空格\t和制表符",
    "&amp;符号&lt;和&gt;括号",
    "行一\n行二",
    "行一\n\n\n行二",
    " 前后空白 ",
    "<img src='a.png'>内容<img/>",
    "[图片][图片]连续标记",
    "没有任何标记的普通文本",
    "标签<b>加粗</b>与<i>斜体</i>混合",
    "实体&quot;引号&quot;测试",
    "&nbsp;不断行空格&nbsp;",
    "混合[图片]与<p>标签</p>与  空格",
    "末尾图片标记[图片]",
    "[image]开头图片标记",
    "<a href='x'>链接文字</a>",
    "制表\t符\t分隔",
    "换行\r\n回车",
    "全角　空格测试",
    "123数字456",
    "English mixed 中文 text",
    "<span>嵌套<span>标签</span></span>",
    "&#39;数字实体&#39;",
    "空标签<>不完整",
    "单独的<未闭合标签",
    "单独的>右括号",
    "。标点开头",
    "句末标点。",
    "问号？感叹号！",
    "逗号，分隔，串",
    "<P>大写标签</P>",
    "[IMAGE]大写图片标记",
    "文字[图 片]带空格不是标记",
    "双重  空格  多处",
    "\n开头换行",
    "结尾换行\n",
    "\t开头制表符",
    "中间\n单换行\n多段",
    "<br>换行标签<br/>",
    "引用&gt;块",
    "表格<table><tr><td>单元</td></tr></table>后",
    "样式<style>p{}</style>残留",
    "很长的一串中文字符没有任何需要清理的内容应该原样保留下来",
    "a<b>b</b>c[图片]d  e",
    "[图片]",
    "<p></p>",
]


def test_reference_cleaner_fixture():
    assert len(CLEAN_FIXTURE) == 50
    for raw in CLEAN_FIXTURE:
        assert clean_text(raw) == reference_clean(raw), raw


def test_clean_tag_stripping():
    assert clean_text("<p>你好</p>") == "你好"


def test_clean_whitespace_collapse():
    assert clean_text("你好  世界\n\n") == "你好 世界"


def test_clean_image_marker():
    assert clean_text("开始[图片]结束") == "开始结束"


def test_clean_idempotent_on_fixture():
    for raw in CLEAN_FIXTURE:
        once = clean_text(raw)
        assert clean_text(once) == once


def test_clean_idempotent_on_adversarial():
    # markup only exposed by an earlier removal pass
    for raw in ["&lt;p&gt;你好&lt;/p&gt;", "<<b>i>", "[图[图片]片]", "&amp;amp;", "&a<b>mp;x"]:
        once = clean_text(raw)
        assert clean_text(once) == once


def test_split_paragraphs_blank_line():
    doc = RawDocument("d1", "other", "A\n\nB")
    paras = split_paragraphs(doc)
    assert [p.text for p in paras] == ["A", "B"]
    assert [p.index for p in paras] == [0, 1]


def test_split_paragraphs_empty():
    assert split_paragraphs(RawDocument("d", "other", "")) == []


def test_split_paragraphs_reconstruct_long_article():
    rng = random.Random(11)
    # article on the scale of the cloze corpus (~1000 tokens)
    paras = []
    while sum(len(p) for p in paras) < 1036:
        paras.append("".join(rng.choice(CJK_POOL) for _ in range(rng.randint(20, 80))))
    text = "\n".join(paras)
    out = split_paragraphs(RawDocument("d", "news", text))
    assert "".join(p.text for p in out) == text.replace("\n", "")


def test_split_sentences_basic_offsets():
    p = Paragraph("d", 0, "今天下雨，我在家。你呢？")
    sents = split_sentences(p)
    assert [s.text for s in sents] == ["今天下雨", "我在家", "你呢"]
    for s in sents:
        assert p.text[s.start : s.end] == s.text


def test_split_sentences_no_delimiter():
    p = Paragraph("d", 0, "无标点")
    sents = split_sentences(p)
    assert [s.text for s in sents] == ["无标点"]
    assert (sents[0].start, sents[0].end) == (0, 3)


def test_split_sentences_all_delimiters():
    assert split_sentences(Paragraph("d", 0, "。。。")) == []


def brute_force_sentences(text: str) -> list[tuple[int, int, str]]:
    cuts = [-1] + [i for i, ch in enumerate(text) if ch in SENTENCE_DELIMITERS] + [len(text)]
    out = []
    for a, b in zip(cuts, cuts[1:]):
        if b - a > 1:
            out.append((a + 1, b, text[a + 1 : b]))
    return out


def test_split_sentences_offset_fidelity_fuzz():
    rng = random.Random(23)
    alphabet = CJK_POOL + list("，。；;！!？?,") + list(" abcde０１") + list("éß√😀𝄞")
    for _ in range(300):
        text = "".join(rng.choice(alphabet) for _ in range(rng.randint(0, 60)))
        p = Paragraph("d", 0, text)
        got = [(s.start, s.end, s.text) for s in split_sentences(p)]
        assert got == brute_force_sentences(text)
        for start, end, sent in got:
            assert not any(ch in SENTENCE_DELIMITERS for ch in sent)
            assert text[start:end] == sent


def test_sentences_ordered_non_overlapping():
    rng = random.Random(5)
    for _ in range(50):
        text = "".join(rng.choice(CJK_POOL + ["。", "，"]) for _ in range(40))
        sents = split_sentences(Paragraph("d", 0, text))
        for a, b in zip(sents, sents[1:]):
            assert a.end <= b.start
