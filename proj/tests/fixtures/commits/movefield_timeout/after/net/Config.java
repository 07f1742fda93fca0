package net;

public class Config {
    long timeout = 30;

    Config withTimeout(long timeout) {
        Config c = new Config();
        c.timeout = timeout;
        return c;
    }
}
