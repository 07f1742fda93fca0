public class Search {
    public int find(int[] values, int target) {
        for (int i = 0; i < values.length; i++) {
            if (values[i] == target) {
                return i;
            }
        }
        return -1;
    }

    public int sum(int[] values) {
        int s = 0;
        for (int i = 0; i < values.length; i++) {
            s += values[i];
        }
        return s;
    }
}
