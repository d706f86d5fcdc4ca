public class Widget {
    static class Anchor {
        int x;
        int y;
    }

    private Anchor anchor;
    private boolean visible;

    public Widget() {
        this(new Anchor());
    }

    public Widget(Anchor anchor) {
        this.anchor = anchor;
        this.visible = true;
    }

    public void moveTo(int x, int y) {
        anchor.x = x;
        anchor.y = y;
    }

    public boolean toggle() {
        visible = !visible;
        return visible;
    }
}
