package net;

import java.util.List;

public class Server {
    private long timeout = 30;
    private final List<String> hosts;

    public Server(List<String> hosts, long timeout) {
        this.hosts = hosts;
        this.timeout = timeout;
    }

    public long waitTime(int attempts) {
        long total = 0;
        for (int i = 0; i < attempts; i++) {
            total += timeout * (i + 1);
        }
        return total;
    }
}
